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

// Reproductions of worked numbers: the crossover table, the coherent-state
// discretization estimates and the displaced-Gibbs average state.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>

#include "harness_util.hpp"
#include "qens/channel.hpp"
#include "qens/experiments.hpp"
#include "qens/metrics.hpp"

namespace qens {

using detail::add_record;
using detail::fixed;
using detail::make_check;

ExperimentReport repro_crossover(const ExperimentConfig& cfg) {
  ExperimentReport rep;
  rep.experiment = "crossover";
  rep.table_header = {"d", "v(d)", "crossover_eps"};
  const int d_max = static_cast<int>(cfg.param("d_max", 20));
  for (int d = 2; d <= d_max; ++d) {
    const auto e = crossover_eps(d);
    rep.table.push_back({std::to_string(d), fixed(crossover_v(d), 12), e ? fixed(*e, 10) : "none"});
  }
  auto in = [](std::optional<double> e, double lo, double hi) { return e && *e >= lo && *e <= hi; };
  const auto e2 = crossover_eps(2), e3 = crossover_eps(3), e4 = crossover_eps(4), e5 = crossover_eps(5);
  rep.checks.push_back(make_check("crossover d=2 is 0", e2.value_or(-1.0), 0.0, e2 && *e2 == 0.0));
  rep.checks.push_back(make_check("crossover d=3 in [0.10, 0.12]", e3.value_or(-1.0), 0.11, in(e3, 0.10, 0.12)));
  rep.checks.push_back(make_check("crossover d=4 in [0.44, 0.46]", e4.value_or(-1.0), 0.45, in(e4, 0.44, 0.46)));
  rep.checks.push_back(make_check("crossover d=5 in [0.54, 0.56]", e5.value_or(-1.0), 0.55, in(e5, 0.54, 0.56)));
  bool none = true, some = true;
  for (int d = 18; d <= std::max(d_max, 18); ++d) none = none && !crossover_eps(d);
  for (int d = 2; d <= 17; ++d) some = some && crossover_eps(d).has_value();
  rep.checks.push_back(make_check("crossover none for d >= 18", none, 1.0, none));
  rep.checks.push_back(make_check("crossover exists for d <= 17", some, 1.0, some));
  const double u1 = crossover_u(1.0), v17 = crossover_v(17), v18 = crossover_v(18);
  rep.checks.push_back(make_check("u(1) = 16", u1, 16.0, std::abs(u1 - 16.0) <= 1e-12));
  rep.checks.push_back(make_check("v(17) = 256/17", v17, 256.0 / 17.0, std::abs(v17 - 256.0 / 17.0) <= 1e-12));
  rep.checks.push_back(make_check("v(18) = 289/18", v18, 289.0 / 18.0, std::abs(v18 - 289.0 / 18.0) <= 1e-12));

  // Which bound is smaller on either side of the crossover.
  int bad = 0;
  for (int d = 3; d <= 20; ++d) {
    const auto e = crossover_eps(d);
    for (int k = 1; k < 40; ++k) {
      const double eps = k * (1.0 - 1.0 / d) / 40.0;
      if (e && std::abs(eps - *e) < 1e-6) continue;
      const bool ours = cb_holevo_rank(eps, d, d) <= chi_cb_prior_dim(eps, d);
      const bool expected = e && eps > *e;
      if (ours != expected) ++bad;
    }
  }
  rep.checks.push_back(make_check("crossover predicate on the eps grid", bad, 0.0, bad == 0));
  return rep;
}

double poisson_entropy(double lambda) {
  if (lambda < 0.0) throw RangeError("poisson_entropy: negative parameter");
  if (lambda == 0.0) return 0.0;
  // -sum P(n) ln P(n) over a window holding all but ~1e-30 of the mass.
  const double width = 12.0 * std::sqrt(lambda) + 40.0;
  const int lo = static_cast<int>(std::max(0.0, lambda - width)), hi = static_cast<int>(lambda + width);
  const double ll = std::log(lambda);
  double s = 0.0;
  for (int n = lo; n <= hi; ++n) {
    const double lp = n * ll - lambda - std::lgamma(n + 1.0);
    s -= std::exp(lp) * lp;
  }
  return s;
}

namespace {

double simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
               double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = f(0.5 * (a + m)), rm = f(0.5 * (m + b));
  const double left = (m - a) / 6.0 * (fa + 4.0 * lm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * rm + fb);
  const double err = left + right - whole;
  if (std::abs(err) <= 15.0 * tol) return left + right + err / 15.0;
  if (depth <= 0) throw std::runtime_error("adaptive quadrature did not converge");
  return simpson(f, a, m, fa, lm, fm, left, 0.5 * tol, depth - 1) + simpson(f, m, b, fm, rm, fb, right, 0.5 * tol, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol) {
  // Start from a uniform split so that the initial estimate sees the shape.
  constexpr int kPieces = 16;
  double total = 0.0;
  for (int i = 0; i < kPieces; ++i) {
    const double lo = a + (b - a) * i / kPieces, hi = a + (b - a) * (i + 1) / kPieces;
    const double fa = f(lo), fm = f(0.5 * (lo + hi)), fb = f(hi);
    total += simpson(f, lo, hi, fa, fm, fb, (hi - lo) / 6.0 * (fa + 4.0 * fm + fb), tol / kPieces, 40);
  }
  return total;
}

double normal_upper(double x, double sd) { return 0.5 * std::erfc(x / (sd * std::numbers::sqrt2)); }

// Mass of (a, b] under N(0, sd^2), computed from the nearer tail.
double interval_mass(double a, double b, double sd) {
  if (a >= 0.0) return normal_upper(a, sd) - normal_upper(b, sd);
  if (b <= 0.0) return normal_upper(-b, sd) - normal_upper(-a, sd);
  return 1.0 - normal_upper(b, sd) - normal_upper(-a, sd);
}

// Cells (Delta k, Delta (k+1)] x (Delta j, Delta (j+1)] for k, j in [k0, k0+m).
PointMeasure window(double n, double delta, int k0, int j0, int m) {
  const double sd = std::sqrt(n / 2.0);
  std::vector<RVector> pts;
  std::vector<double> w;
  double total = 0.0;
  for (int k = k0; k < k0 + m; ++k)
    for (int j = j0; j < j0 + m; ++j) {
      const double x = interval_mass(delta * k, delta * (k + 1), sd) * interval_mass(delta * j, delta * (j + 1), sd);
      pts.push_back(Eigen::Vector2d(delta * (k + 0.5), delta * (j + 0.5)));
      w.push_back(x);
      total += x;
    }
  for (double& x : w) x /= total;
  return PointMeasure(std::move(pts), std::move(w));
}

}  // namespace

double coherent_average_entropy(double n, double tol) {
  if (!(n > 0.0)) throw RangeError("coherent_average_entropy: N must be positive");
  auto f = [n](double s) { return poisson_entropy(s) * std::exp(-s / n) / n; };
  return adaptive_simpson(f, 0.0, 50.0 * n, tol);
}

DiscreteCoherent discretize_gaussian(double n, double delta, double half_width) {
  if (!(n > 0.0) || !(delta > 0.0) || !(half_width > 0.0)) throw RangeError("discretize_gaussian: parameters must be positive");
  const double sd = std::sqrt(n / 2.0);
  const int kk = static_cast<int>(std::ceil(half_width / delta));
  std::vector<double> m;
  for (int k = -kk; k < kk; ++k) m.push_back(interval_mass(delta * k, delta * (k + 1), sd));
  double total = 0.0;
  for (double x : m) total += x;
  DiscreteCoherent out;
  // The mass outside the window (below 1e-20 for the default width) is
  // redistributed by renormalisation.
  for (int a = 0; a < 2 * kk; ++a)
    for (int b = 0; b < 2 * kk; ++b) {
      const double w = m[a] * m[b] / (total * total);
      if (w <= 0.0) continue;
      out.atoms.push_back({delta * (a - kk + 0.5), delta * (b - kk + 0.5)});
      out.weights.push_back(w);
    }
  return out;
}

ExperimentReport repro_coherent_discretization(const ExperimentConfig& cfg) {
  ExperimentReport rep;
  rep.experiment = "coherent";
  rep.table_header = {"Delta", "S_exact", "S_discrete", "gap", "loss_bound", "gain_bound"};
  const double n = cfg.param("N", 1.0);
  const int n_max = static_cast<int>(cfg.param("n_max", 200));
  const double sd = std::sqrt(n / 2.0);

  const double exact = coherent_average_entropy(n, 1e-12);
  const double coarse = coherent_average_entropy(n, 1e-8);
  rep.checks.push_back(make_check("quadrature self-convergence", std::abs(exact - coarse), 1e-6, std::abs(exact - coarse) <= 1e-6));

  // Entropy of the dephased coherent state is the Poisson entropy.
  const KrausChannel deph = fock_dephasing(n_max);
  double worst = 0.0;
  for (double s : {0.5, 2.0, 10.0, n_max / 4.0}) {
    const DensityMatrix out = apply(deph, coherent_state(complex(std::sqrt(s / 2.0), std::sqrt(s / 2.0)), n_max).density());
    worst = std::max(worst, std::abs(von_neumann_entropy(out) - poisson_entropy(s)));
  }
  rep.checks.push_back(make_check("dephased coherent entropy equals H_P", worst, 1e-8, worst <= 1e-8));

  double prev_gap = -1.0;
  int n_rec = 0;
  for (double delta : {0.5, 0.25}) {
    const double half_width = std::max(10.0 * sd, 6.0 * sd);
    const auto disc = discretize_gaussian(n, delta, half_width);
    double s_disc = 0.0, energy = 0.0;
    for (std::size_t k = 0; k < disc.atoms.size(); ++k) {
      const double s = disc.atoms[k][0] * disc.atoms[k][0] + disc.atoms[k][1] * disc.atoms[k][1];
      s_disc += disc.weights[k] * poisson_entropy(s);
      energy += disc.weights[k] * s;
    }
    const auto b = discretization_bounds(delta, n);
    const double h = delta / std::numbers::sqrt2;
    const std::map<std::string, ParamValue> p{{"Delta", delta}, {"N", n}, {"atoms", double(disc.atoms.size())}};
    add_record(rep, n_rec++, make_report("discretization-loss", h, b.loss, exact - s_disc, p));
    add_record(rep, n_rec++, make_report("discretization-gain", h, b.gain, s_disc - exact, p));
    add_record(rep, n_rec++, make_report("discretization-energy", h, n + delta * delta / 2.0 + delta * std::sqrt(std::numbers::pi * n / 2.0),
                                         energy, p));
    const double gap = std::abs(exact - s_disc);
    if (prev_gap >= 0.0)
      rep.checks.push_back(make_check("discretization gap shrinks with Delta", gap, prev_gap, gap <= prev_gap));
    prev_gap = gap;
    rep.table.push_back({fixed(delta, 3), fixed(exact, 10), fixed(s_disc, 10), fixed(gap, 10), fixed(b.loss, 10), fixed(b.gain, 10)});

    // Coarse cells against their four sub-cells on 2 x 2 windows.
    const double kr_rhs = h + h / 2.0;
    for (auto [k0, j0] : {std::pair{0, 0}, {-1, -1}, {1, -2}, {-3, 2}, {-2, 0}}) {
      const PointMeasure c = window(n, delta, k0, j0, 2);
      const PointMeasure f = window(n, delta / 2.0, 2 * k0, 2 * j0, 4);
      std::map<std::string, ParamValue> q{{"Delta", delta}, {"k0", double(k0)}, {"j0", double(j0)}};
      add_record(rep, n_rec++, make_report("kr-window", h, kr_rhs, kr_distance(c, f), q));
      add_record(rep, n_rec++, make_report("kr-window-w1", h, kr_rhs, kr_modified(c, f), q));
    }
  }

  // Lipschitz transfer for zeta -> |zeta><zeta| (trace-norm constant 2).
  const int small_max = 40;
  Rng rng(derive_seed(cfg.seed, 0xc0e));
  for (int t = 0; t < 5; ++t) {
    std::vector<RVector> pa, pb;
    std::vector<DensityMatrix> sa, sb;
    for (int k = 0; k < 3; ++k) {
      const double r = std::sqrt(detail::uniform(rng, 0.0, 8.0)), th = detail::uniform(rng, 0.0, 2.0 * std::numbers::pi);
      const double r2 = std::clamp(r + detail::uniform(rng, -0.3, 0.3), 0.0, std::sqrt(8.0));
      const double th2 = th + detail::uniform(rng, -0.2, 0.2);
      pa.push_back(Eigen::Vector2d(r * std::cos(th), r * std::sin(th)));
      pb.push_back(Eigen::Vector2d(r2 * std::cos(th2), r2 * std::sin(th2)));
      sa.push_back(coherent_state(std::polar(r, th), small_max).density());
      sb.push_back(coherent_state(std::polar(r2, th2), small_max).density());
    }
    const auto wa = dirichlet_weights(3, rng), wb = dirichlet_weights(3, rng);
    const PointMeasure ma(pa, wa), mb(pb, wb);
    const double w1 = kr_modified(ma, mb);
    const double dk = d_kantorovich(Ensemble(wa, sa), Ensemble(wb, sb)).value;
    add_record(rep, n_rec++, make_report("lemma9", w1, w1, dk, {{"n_max", double(small_max)}}));
  }
  return rep;
}

ExperimentReport repro_gibbs_displaced(const ExperimentConfig& cfg) {
  ExperimentReport rep;
  rep.experiment = "gibbs-displaced";
  rep.table_header = {"quantity", "value"};
  const double n = cfg.param("N", 0.5), n0 = cfg.param("N0", 0.5);
  const int n_max = static_cast<int>(cfg.param("n_max", 40));
  const int nodes = static_cast<int>(cfg.param("nodes", 48));
  const double s_max = cfg.param("s_max", n_max / 4.0);
  const HamiltonianSpec osc = HamiltonianSpec::oscillator(n_max + 1);

  // Phase averaging removes the off-diagonal Fock elements, and the diagonal
  // of D(zeta) gamma D(zeta)^dagger depends on |zeta| only, so a radial rule
  // over s = |zeta|^2 suffices.
  std::vector<double> avg(n_max + 1, 0.0);
  double psv = 0.0, mass = 0.0;
  for (const auto& [s, w] : detail::gauss_legendre(nodes, 0.0, s_max)) {
    const DensityMatrix st = displaced_thermal_state(complex(std::sqrt(s), 0.0), n0, n_max);
    const double dens = w * std::exp(-s / n) / n;
    for (int k = 0; k <= n_max; ++k) avg[k] += dens * st.matrix()(k, k).real();
    psv += dens * passive_energy(st, osc);
    mass += dens;
  }
  const double m = n + n0, q = m / (1.0 + m);
  double dist = 0.0;
  for (int k = 0; k <= n_max; ++k) dist += std::abs(avg[k] / mass - std::pow(q, k) / (1.0 + m));
  rep.table.push_back({"radial_tail_mass", fixed(std::exp(-s_max / n), 12)});
  rep.table.push_back({"trace_distance_to_gamma(N+N0)", fixed(0.5 * dist, 12)});
  rep.table.push_back({"fock_tail_of_gamma(N+N0)", fixed(std::pow(q, n_max + 1), 12)});
  rep.table.push_back({"avg_passive_energy", fixed(psv / mass, 12)});
  rep.table.push_back({"N0", fixed(n0, 12)});
  return rep;
}

}  // namespace qens
