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

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qens/bounds.hpp"
#include "qens/energy.hpp"

using namespace qens;

namespace {

const double kLn2 = std::numbers::ln2;

}  // namespace

TEST_SUITE("bounds") {

TEST_CASE("rank semicontinuity bound") {
  CHECK(scb_rank(0.0, 3) == 0.0);
  CHECK(scb_rank(0.1, 2) == doctest::Approx(0.325082973391448));
  for (int r : {2, 3, 5, 17, 100}) {
    const double sw = 1.0 - 1.0 / r;
    CHECK(std::abs(scb_rank(sw, r) - std::log(r)) < 1e-12);
    CHECK(std::abs(scb_rank(std::nextafter(sw, 0.0), r) - std::log(r)) < 1e-12);
    CHECK(scb_rank(0.99, r) == doctest::Approx(std::log(r)));
  }
  CHECK_THROWS(scb_rank(-0.1, 2));
  CHECK_THROWS(scb_rank(0.1, 1));
}

TEST_CASE("energy semicontinuity bound") {
  const HamiltonianSpec osc = HamiltonianSpec::oscillator(300);
  for (double eps : {0.05, 0.3, 0.8})
    for (double e : {0.2, 1.0, 3.0})
      CHECK(scb_energy(eps, e, osc) == doctest::Approx(eps * g_func(e / eps) + g_func(eps)).epsilon(1e-8));
  CHECK(scb_energy(1.0, 0.7, osc) == doctest::Approx(F_H(osc, 0.7) + 2.0 * kLn2).epsilon(1e-8));
  CHECK(scb_energy(0.0, 1.0, osc) == 0.0);
}

TEST_CASE("Holevo bounds") {
  const HamiltonianSpec osc = HamiltonianSpec::oscillator(300);
  CHECK(scb_holevo(0.0, RankCase{3}, RankCase{4}) == 0.0);
  for (int r : {4, 8, 16})
    for (double e : {0.1, 0.3}) {
      const double want = e * std::log(2.0 * (r - 1)) + 2.0 * binary_entropy(e);
      CHECK(scb_holevo(e, RankCase{r}, RankCase{3}) == doctest::Approx(want).epsilon(1e-12));
    }
  for (double eps : {0.1, 0.4}) {
    const double n = 1.5;
    const double want = eps * (g_func(n / eps) + g_func(2.0 * n)) + 2.0 * g_func(eps);
    CHECK(scb_holevo(eps, EnergyCase{n, osc}, EnergyCase{2.0 * eps * n, osc}) == doctest::Approx(want).epsilon(1e-8));
  }
  CHECK_THROWS(scb_holevo(1.2, RankCase{3}, RankCase{3}));

  CHECK(cb_holevo_rank(0.0, 3, 3) == 0.0);
  CHECK(cb_holevo_rank(0.2, 5, 5) == doctest::Approx(2 * 0.2 * std::log(4.0) + 2 * binary_entropy(0.2)));
  CHECK(cb_holevo_energy(0.2, 1.0, osc, 1.0, osc) ==
        doctest::Approx(2 * 0.2 * g_func(1.0 / 0.2) + 2 * g_func(0.2)).epsilon(1e-8));
}

TEST_CASE("prior continuity bounds") {
  const HamiltonianSpec osc = HamiltonianSpec::oscillator(300);
  double prev = 1e9;
  for (double eps : {0.3, 0.1, 1e-2, 1e-4, 1e-6}) {
    const double v = chi_cb_prior_dim(eps, 4);
    CHECK(v <= prev);
    prev = v;
  }
  CHECK(prev < 1e-4);
  const auto b = chi_cb_prior_energy(0.1, 10.0, osc);
  CHECK(std::isfinite(b.value));
  CHECK(b.t_opt > 0.0);
  CHECK(b.t_opt <= 1.0 / (2 * 0.1) + 1e-12);
  // Doubling the grid can only lower the minimum.
  CHECK(chi_cb_prior_energy(0.1, 10.0, osc, 2000).value <= b.value + 1e-12);
  CHECK(chi_cb_prior_energy(1e-6, 1.0, osc).value < 1e-3);
}

TEST_CASE("crossover") {
  CHECK(std::abs(crossover_u(1.0) - 16.0) < 1e-12);
  CHECK(std::abs(crossover_v(17) - 256.0 / 17) < 1e-12);
  CHECK(std::abs(crossover_v(18) - 289.0 / 18) < 1e-12);
  CHECK(crossover_eps(2).value() == 0.0);
  for (int d = 3; d <= 17; ++d) {
    const auto e = crossover_eps(d);
    REQUIRE(e.has_value());
    CHECK(std::abs(crossover_u(*e) - crossover_v(d)) < 1e-8 * crossover_v(d));
  }
  for (int d = 18; d <= 40; ++d) CHECK_FALSE(crossover_eps(d).has_value());
  // Roots increase with d.
  CHECK(*crossover_eps(4) > *crossover_eps(3));
  CHECK(*crossover_eps(10) > *crossover_eps(5));
}

TEST_CASE("average entropy bounds") {
  const HamiltonianSpec osc = HamiltonianSpec::oscillator(300);
  CHECK(ae_upper_rank(0.0, 4) == 0.0);
  // Equality for the spectrum {1-p, p/(r-1), ...}.
  for (int r : {2, 3, 8}) {
    const double p = 0.2;
    const double exact = -(1 - p) * std::log(1 - p) - p * std::log(p / (r - 1));
    CHECK(ae_upper_rank(p, r) == doctest::Approx(exact));
  }
  CHECK(ae_upper_energy(0.0, 1.0, osc) == 0.0);
  CHECK(aoe_upper(5, 0.0, 1.0, osc) == doctest::Approx(std::log(5.0)));
  CHECK(aoe_upper(5, 0.2, 1.0, osc) ==
        doctest::Approx(std::log(5.0) + 0.2 * g_func(1.0 / 0.2) + g_func(0.2)).epsilon(1e-8));
}

TEST_CASE("entanglement of formation bounds") {
  CHECK(eof_scb(0.0, 4) == 0.0);
  CHECK(eof_scb_fid(1.0, 4) == 0.0);
  CHECK(eof_upper_sep(0.0, 4) == 0.0);
  for (int r : {4, 16, 64})
    for (double e : {0.001, 0.01, 0.05}) {
      const double dl = std::sqrt(e * (2 - e));
      CHECK(eof_scb(e, r) == doctest::Approx(dl * std::log(r - 1.0) + binary_entropy(dl)).epsilon(1e-12));
      const double df = std::sqrt(e);
      CHECK(eof_scb_fid(1 - e, r) == doctest::Approx(df * std::log(r - 1.0) + binary_entropy(df)).epsilon(1e-12));
    }
  CHECK_THROWS(eof_scb(0.5, 2));
  double prev = 0.0;
  for (double f : {0.9999, 0.999, 0.99, 0.95}) {
    const double v = eof_scb_fid(f, 8);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("discretization and the auxiliary inequality") {
  for (double n : {0.5, 1.0, 10.0}) {
    double prev = 1e9;
    for (double delta : {1.0, 0.5, 0.1, 1e-3, 1e-6}) {
      const auto b = discretization_bounds(delta, n);
      CHECK(b.loss <= b.gain);
      CHECK(b.gain <= prev);
      prev = b.gain;
    }
    CHECK(prev < 1e-3);
  }
  const auto b = discretization_bounds(0.5, 1.0);
  CHECK(std::isfinite(b.loss));
  CHECK(std::isfinite(b.gain));
  for (double n : {0.5, 1.0, 10.0, 100.0})
    for (int k = 1; k <= 100; ++k) CHECK(s_ineq_check(k / 100.0, n));
  CHECK(s_ineq_check(1.0 / std::numbers::e, 1.0));
  CHECK_THROWS(s_ineq_check(0.0, 1.0));
}

TEST_CASE("tagged evaluation") {
  for (const auto& tag : bound_tags()) CHECK_FALSE(tag.empty());
  const auto r = evaluate_bound("prop2", {{"eps", 0.1}, {"r", 2}});
  CHECK(r.rhs == doctest::Approx(0.325082973391448));
  CHECK_FALSE(r.holds.has_value());
  const auto with_lhs = evaluate_bound("prop2", {{"eps", 0.1}, {"r", 2}, {"lhs", 0.4}});
  REQUIRE(with_lhs.holds.has_value());
  CHECK_FALSE(*with_lhs.holds);
  CHECK_THROWS(evaluate_bound("nope", {}));
  CHECK_THROWS(evaluate_bound("prop2", {{"eps", 0.1}}));
  CHECK_THROWS(evaluate_bound("prop2", {{"eps", 0.1}, {"r", 2.5}}));
  const auto rep = make_report("x", 0.1, 1.0, 1.0 + 0.5e-8);
  CHECK(*rep.holds);
  CHECK_FALSE(*make_report("x", 0.1, 1.0, 1.0 + 2e-8).holds);
}

}  // TEST_SUITE
