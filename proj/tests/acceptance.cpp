// Copyright 2026 The qens Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qens/bounds.hpp"
#include "qens/energy.hpp"
#include "qens/experiments.hpp"
#include "qens/metrics.hpp"
#include "qens/random.hpp"

using namespace qens;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::string summary(const ExperimentReport& r) {
  std::string s = fmt("%zu records, %d violations, %d failed checks", r.records.size(), r.violations(), r.failed_checks());
  for (const auto& c : r.checks)
    if (!c.passed) s += fmt("; failed '%s' (%.6g vs %.6g)", c.name.c_str(), c.value, c.threshold);
  return s;
}

ExperimentConfig config(const std::string& name, int trials, std::vector<int> dims = {2, 3, 4, 5}) {
  ExperimentConfig c;
  c.experiment = name;
  c.trials = trials;
  c.dims = std::move(dims);
  return c;
}

Outcome crossover() {
  const auto e2 = crossover_eps(2), e3 = crossover_eps(3), e4 = crossover_eps(4), e5 = crossover_eps(5);
  bool ok = e2 && *e2 == 0.0 && e3 && e4 && e5;
  ok = ok && *e3 >= 0.10 && *e3 <= 0.12 && *e4 >= 0.44 && *e4 <= 0.46 && *e5 >= 0.54 && *e5 <= 0.56;
  bool none = true;
  for (int d = 18; d <= 64; ++d) none = none && !crossover_eps(d);
  bool some = true;
  for (int d = 3; d <= 17; ++d) some = some && crossover_eps(d).has_value();
  const double du = std::abs(crossover_u(1.0) - 16.0), dv = std::abs(crossover_v(18) - 289.0 / 18);
  ok = ok && none && some && du <= 1e-12 && dv <= 1e-12;
  return {ok, fmt("eps2=%g eps3=%.5f eps4=%.5f eps5=%.5f, none for d>=18: %s, |u(1)-16|=%.1e, |v(18)-289/18|=%.1e",
                  e2.value_or(-1), e3.value_or(-1), e4.value_or(-1), e5.value_or(-1), none ? "yes" : "no", du, dv)};
}

Outcome worked_pair() {
  auto flagged = [](const DensityMatrix& r, int k) {
    return DensityMatrix(kron(r.matrix(), DensityMatrix::basis(2, k).matrix()));
  };
  const Ensemble mu({0.5, 0.5}, {flagged(DensityMatrix::basis(2, 0), 0), flagged(DensityMatrix::basis(2, 1), 1)});
  const Ensemble nu = Ensemble::singleton(flagged(DensityMatrix::maximally_mixed(2), 0));
  const double a = d0(mu, nu), b = d_kantorovich(mu, nu).value;
  return {std::abs(a - 0.5) <= 1e-10 && std::abs(b - 0.75) <= 1e-10, fmt("D0=%.12f DK=%.12f", a, b)};
}

Outcome lp_oracles() {
  Rng rng(0xacce55);
  double worst_k = 0.0, worst_e = 0.0;
  std::uniform_int_distribution<int> members(1, 3), dims(2, 3);
  for (int t = 0; t < 200; ++t) {
    const int d = dims(rng);
    const Ensemble mu = random_ensemble(d, members(rng), rng), nu = random_ensemble(d, members(rng), rng);
    const double k = d_kantorovich(mu, nu).value;
    const double kv = oracle::transport_by_vertices(kantorovich_cost(mu, nu), mu.weights(), nu.weights());
    worst_k = std::max(worst_k, std::abs(k - kv));
    worst_e = std::max(worst_e, std::abs(d_ehs(mu, nu).value - ehs_angle_grid(mu, nu, 720)));
  }
  return {worst_k <= 1e-8 && worst_e <= 1e-5,
          fmt("max |DK - vertex oracle| = %.2e, max |D_ehs - 720-cut grid| = %.2e", worst_k, worst_e)};
}

Outcome metric_chain() {
  Rng rng(0xc4a17);
  std::uniform_int_distribution<int> members(1, 5), dims(2, 5);
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const int d = dims(rng);
    const Ensemble mu = random_ensemble(d, members(rng), rng), nu = random_ensemble(d, members(rng), rng);
    const double e = d_ehs(mu, nu).value, k = d_kantorovich(mu, nu).value, u = dk_upper(mu, nu), z = d0(mu, nu);
    const double avg = trace_norm(CMatrix(average_state(mu).matrix() - average_state(nu).matrix()));
    worst = std::min({worst, k - e, u - k, z - e, 2.0 * e - avg});
  }
  return {worst >= -1e-8, fmt("1000 pairs, min slack %.2e", worst)};
}

Outcome suite(const std::string& name, int trials, std::vector<int> dims = {2, 3, 4, 5}) {
  const auto rep = run_experiment(name, config(name, trials, std::move(dims)));
  return {rep.ok(), summary(rep)};
}

Outcome repro(const std::string& name) {
  const auto rep = run_repro(name, config(name, 1));
  return {rep.ok(), summary(rep)};
}

Outcome oscillator_closed_form() {
  // Complete 200-level spectrum E_k = k, no closed-form shortcut.
  std::vector<double> e(200);
  for (int k = 0; k < 200; ++k) e[k] = k;
  const HamiltonianSpec h(e);
  double worst = 0.0;
  for (int i = 0; i <= 200; ++i) {
    const double en = 0.01 * std::pow(1000.0, i / 200.0);
    worst = std::max(worst, std::abs(F_H(h, en) - g_func(en)));
  }
  return {worst <= 1e-8, fmt("max |F_H - g| over 201 energies in [0.01, 10] = %.2e", worst)};
}

Outcome coherent() {
  ExperimentConfig c = config("coherent", 1);
  c.extra["N"] = 1.0;
  c.extra["n_max"] = 200;
  const auto rep = run_repro("coherent", c);
  return {rep.ok(), summary(rep)};
}

Outcome scalar_sweeps() {
  bool grid = true;
  for (double n : {0.5, 1.0, 10.0, 100.0})
    for (int k = 1; k <= 100; ++k) grid = grid && s_ineq_check(k / 100.0, n);
  double cont = 0.0;
  for (int r = 2; r <= 256; ++r) {
    const double sw = 1.0 - 1.0 / r;
    cont = std::max({cont, std::abs(scb_rank(sw, r) - std::log(r)),
                     std::abs(scb_rank(std::nextafter(sw, 0.0), r) - std::log(r))});
  }
  const HamiltonianSpec osc = HamiltonianSpec::oscillator(200);
  std::vector<std::pair<std::string, std::function<double(double)>>> evals = {
      {"scb_rank", [](double x) { return scb_rank(x, 4); }},
      {"scb_energy", [&](double x) { return scb_energy(x, 1.0, osc); }},
      {"scb_holevo rank", [](double x) { return scb_holevo(x, RankCase{4}, RankCase{3}); }},
      {"scb_holevo energy", [&](double x) { return scb_holevo(x, EnergyCase{1.0, osc}, EnergyCase{2.0, osc}); }},
      {"cb_holevo_rank", [](double x) { return cb_holevo_rank(x, 4, 4); }},
      {"cb_holevo_energy", [&](double x) { return cb_holevo_energy(x, 1.0, osc, 1.0, osc); }},
      {"chi_cb_prior_dim", [](double x) { return chi_cb_prior_dim(x, 4); }},
      {"chi_cb_prior_energy", [&](double x) { return chi_cb_prior_energy(x, 1.0, osc).value; }},
      {"ae_upper_rank", [](double x) { return ae_upper_rank(x, 4); }},
      {"ae_upper_energy", [&](double x) { return ae_upper_energy(x, 1.0, osc); }},
      {"aoe_upper - ln r", [&](double x) { return aoe_upper(4, x, 1.0, osc) - std::log(4.0); }},
      {"eof_scb", [](double x) { return eof_scb(x, 4); }},
      {"eof_scb_fid", [](double x) { return eof_scb_fid(1.0 - x, 4); }},
      {"eof_upper_sep", [](double x) { return eof_upper_sep(x, 4); }},
      {"discretization loss", [](double x) { return discretization_bounds(x, 1.0).loss; }},
      {"discretization gain", [](double x) { return discretization_bounds(x, 1.0).gain; }},
  };
  // Vanishing test: non-increasing along the grid down to 1e-6, and the last
  // two decades shrink the value at least fivefold (a positive limit would not).
  // The square-root moduli of the EoF bounds make an absolute cut-off at 1e-6
  // meaningless, so the absolute check is only a loose 0.05.
  std::string bad;
  double worst_tail = 0.0, worst_shrink = 0.0;
  for (const auto& [name, f] : evals) {
    double prev = f(0.1);
    bool mono = true;
    for (double x = 0.1 / 1.5; x >= 1e-6; x /= 1.5) {
      const double v = f(x);
      mono = mono && v <= prev + 1e-15;
      prev = v;
    }
    const double tail = f(1e-6), shrink = tail / f(1e-4);
    worst_tail = std::max(worst_tail, tail);
    worst_shrink = std::max(worst_shrink, shrink);
    if (!mono || shrink > 0.2 || tail > 0.05) bad += " " + name;
  }
  const bool ok = grid && cont <= 1e-12 && bad.empty();
  return {ok, fmt("s-ineq grid %s, branch continuity %.1e, %zu evaluators monotone to 1e-6, max f(1e-6) = %.2e, max f(1e-6)/f(1e-4) = %.3f%s%s",
                  grid ? "holds" : "fails", cont, evals.size(), worst_tail, worst_shrink, bad.empty() ? "" : ", not vanishing:", bad.c_str())};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double limit;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"crossover table", 1, crossover},
      {"worked metrics pair", 1, worked_pair},
      {"LP oracle equivalence", 120, lp_oracles},
      {"metric chain", 180, metric_chain},
      {"rank semicontinuity suite", 180, [] { return suite("scb-rank", 1000); }},
      {"energy semicontinuity suite", 180, [] { return suite("scb-energy", 500, {2, 3, 4, 5, 6}); }},
      {"oscillator closed form", 5, oscillator_closed_form},
      {"erasure sandwich", 30, [] { return repro("erasure"); }},
      {"coherent discretization", 120, coherent},
      {"steering", 60, [] { return suite("steering", 500); }},
      {"EoF witness", 10, [] { return repro("eof-witness"); }},
      {"scalar property sweeps", 5, scalar_sweeps},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = o.pass && secs < c.limit;
    failed += pass ? 0 : 1;
    std::printf("%s %2zu %-28s %8.2fs (limit %gs)  %s%s\n", pass ? "PASS" : "FAIL", i + 1, c.name, secs, c.limit,
                o.detail.c_str(), o.pass && !pass ? " [over time limit]" : "");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
