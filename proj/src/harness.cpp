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

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <stdexcept>
#include <thread>

#include <Eigen/Eigenvalues>

#include "harness_util.hpp"
#include "qens/experiments.hpp"

namespace qens {

double ExperimentConfig::param(const std::string& key, double fallback) const {
  auto it = extra.find(key);
  return it == extra.end() ? fallback : it->second;
}

void ExperimentConfig::validate() const {
  if (trials < 1) throw std::invalid_argument("config: trials must be >= 1");
  if (dims.empty()) throw std::invalid_argument("config: dims must not be empty");
  for (int d : dims)
    if (d < 2 || d > 8) throw std::invalid_argument("config: dims must lie in [2, 8]");
  if (!(tolerance >= 0.0)) throw std::invalid_argument("config: tolerance must be >= 0");
  if (workers < 1) throw std::invalid_argument("config: workers must be >= 1");
}

int ExperimentReport::violations() const {
  return static_cast<int>(std::count_if(records.begin(), records.end(),
                                        [](const TrialRecord& t) { return t.report.holds == false; }));
}

int ExperimentReport::failed_checks() const {
  return static_cast<int>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.passed; }));
}

double ExperimentReport::max_ratio() const {
  double best = 0.0;
  for (const auto& t : records)
    if (t.report.lhs && t.report.rhs > 0.0) best = std::max(best, *t.report.lhs / t.report.rhs);
  return best;
}

void ExperimentReport::append(const ExperimentReport& other) {
  records.insert(records.end(), other.records.begin(), other.records.end());
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  if (table_header.empty()) table_header = other.table_header;
  if (table_header == other.table_header) table.insert(table.end(), other.table.begin(), other.table.end());
}

ExperimentReport run_trials(const ExperimentConfig& cfg, const std::string& name,
                            const std::function<std::vector<BoundReport>(int, Rng&, TrialContext&)>& trial) {
  cfg.validate();
  const int n = cfg.trials;
  std::vector<std::vector<TrialRecord>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<int> next{0};
  auto work = [&] {
    for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
      try {
        Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(i)));
        TrialContext ctx;
        const auto t0 = std::chrono::steady_clock::now();
        auto reports = trial(i, rng, ctx);
        const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool failed = false;
        for (auto& r : reports) {
          if (r.lhs) {
            r.holds = *r.lhs <= r.rhs + cfg.tolerance;
            failed = failed || !*r.holds;
          }
          slots[i].push_back({i, std::move(r), sec, {}});
        }
        if (failed && ctx.witness) {
          const std::string w = ctx.witness();
          for (auto& rec : slots[i])
            if (rec.report.holds == false) rec.witness = w;
        }
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int workers = std::min(cfg.workers, n);
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  ExperimentReport rep;
  rep.experiment = name;
  for (auto& s : slots)
    for (auto& r : s) rep.records.push_back(std::move(r));
  return rep;
}

namespace detail {

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

int pick(Rng& rng, int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); }

HamiltonianSpec linear_spectrum(int d) {
  std::vector<double> e(d);
  for (int k = 0; k < d; ++k) e[k] = k;
  return HamiltonianSpec(std::move(e));
}

double cap_energy(double eps, double energy, const HamiltonianSpec& h) {
  if (h.extendable() || h.closed_form() != ClosedForm::None) return energy;
  return std::min(energy, eps * h.max_mean());
}

double energy_bound(double eps, double energy, const HamiltonianSpec& h) {
  return scb_energy(eps, cap_energy(eps, std::max(0.0, energy), h), h);
}

int numeric_rank(const CMatrix& psd, double tol) {
  int r = 0;
  for (double x : eigvals_desc(psd))
    if (x > tol) ++r;
  return r;
}

Ensemble perturb_ensemble(const Ensemble& mu, double s, Rng& rng, bool extra) {
  const int d = mu.dim();
  std::vector<double> w;
  std::vector<DensityMatrix> states;
  for (const auto& m : mu.members()) {
    w.push_back(m.weight * (1.0 + s * uniform(rng, -1.0, 1.0)));
    const DensityMatrix tau = random_state(d, 1 + pick(rng, d), rng);
    states.push_back(DensityMatrix::trusted((1.0 - s) * m.state.matrix() + s * tau.matrix()));
  }
  if (extra && s > 0.0) {
    w.push_back(0.2 * s * uniform(rng, 0.5, 1.5));
    states.push_back(random_state(d, 1 + pick(rng, d), rng));
  }
  double total = 0.0;
  for (double x : w) total += x;
  for (double& x : w) x /= total;
  return Ensemble(w, states);
}

std::vector<std::pair<double, double>> gauss_legendre(int n, double a, double b) {
  // Golub-Welsch: nodes are the eigenvalues of the Jacobi matrix.
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) j(k, k - 1) = j(k - 1, k) = k / std::sqrt(4.0 * k * k - 1.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
  std::vector<std::pair<double, double>> out(n);
  for (int k = 0; k < n; ++k) {
    const double v0 = es.eigenvectors()(0, k);
    out[k] = {0.5 * (a + b) + 0.5 * (b - a) * es.eigenvalues()(k), (b - a) * v0 * v0};
  }
  return out;
}

Check make_check(std::string name, double value, double threshold, bool passed) {
  return {std::move(name), value, threshold, passed};
}

void add_record(ExperimentReport& rep, int trial, BoundReport r, double tol) {
  if (r.lhs) r.holds = *r.lhs <= r.rhs + tol;
  rep.records.push_back({trial, std::move(r), 0.0, {}});
}

std::string fixed(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

}  // namespace detail

std::vector<std::string> experiment_names() {
  return {"scb-rank", "scb-energy", "holevo", "steering", "lemmas", "eof", "all"};
}

std::vector<std::string> repro_names() { return {"crossover", "erasure", "coherent", "eof-witness", "gibbs-displaced"}; }

ExperimentReport run_experiment(const std::string& name, const ExperimentConfig& cfg) {
  ExperimentReport rep;
  if (name == "scb-rank") {
    rep = verify_scb_rank(cfg);
    rep.append(prop2_witnesses());
  } else if (name == "scb-energy") {
    rep = verify_scb_energy(cfg);
    rep.append(prop3_witnesses());
  } else if (name == "holevo") {
    rep = verify_holevo(cfg);
    rep.append(erasure_sandwich());
    rep.append(fock_holevo_example(cfg));
  } else if (name == "steering") {
    rep = verify_steering(cfg);
  } else if (name == "lemmas") {
    rep = verify_lemmas(cfg);
  } else if (name == "eof") {
    rep = verify_eof(cfg);
  } else if (name == "all") {
    for (const auto& n : experiment_names())
      if (n != "all") rep.append(run_experiment(n, cfg));
  } else {
    throw std::invalid_argument("unknown experiment '" + name + "'");
  }
  rep.experiment = name;
  return rep;
}

ExperimentReport run_repro(const std::string& name, const ExperimentConfig& cfg) {
  ExperimentReport rep;
  if (name == "crossover")
    rep = repro_crossover(cfg);
  else if (name == "erasure")
    rep = erasure_sandwich();
  else if (name == "coherent")
    rep = repro_coherent_discretization(cfg);
  else if (name == "eof-witness")
    rep = eof_witness();
  else if (name == "gibbs-displaced")
    rep = repro_gibbs_displaced(cfg);
  else
    throw std::invalid_argument("unknown reproduction '" + name + "'");
  rep.experiment = name;
  return rep;
}

}  // namespace qens
