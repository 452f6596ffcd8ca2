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
#include <limits>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "qens/matrix.hpp"
#include "qens/metrics.hpp"
#include "qens/random.hpp"

using namespace qens;

namespace {

CMatrix diag(std::initializer_list<double> v) {
  RVector d(static_cast<int>(v.size()));
  int i = 0;
  for (double x : v) d(i++) = x;
  return d.cast<complex>().asDiagonal();
}

DensityMatrix bell() {
  CVector v = CVector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return DensityMatrix::pure(v);
}

}  // namespace

TEST_SUITE("matrix") {

TEST_CASE("validators reject malformed inputs") {
  CMatrix nh(2, 2);
  nh << 1.0, 0.5, 0.0, 0.0;
  CHECK_THROWS_AS(HermitianOperator{nh}, NotHermitianError);
  CHECK_THROWS_AS(DensityMatrix{diag({1.5, -0.5})}, NotPsdError);
  CHECK_THROWS_AS(DensityMatrix{diag({0.5, 0.4})}, TraceError);
  CHECK_THROWS_AS(PureState{CVector::Ones(2)}, NormError);
  CHECK_THROWS_AS(DensityMatrix{CMatrix::Identity(2, 3)}, DimensionError);
  CHECK_NOTHROW(DensityMatrix{diag({0.5, 0.5})});
}

TEST_CASE("eigvals_desc") {
  const auto one = eigvals_desc(CMatrix(CMatrix::Identity(2, 2)));
  CHECK(one[0] == doctest::Approx(1.0));
  CHECK(one[1] == doctest::Approx(1.0));
  const auto d = eigvals_desc(diag({0.2, 0.8}));
  CHECK(d[0] == doctest::Approx(0.8));
  CHECK(d[1] == doctest::Approx(0.2));

  Rng rng(11);
  for (int t = 0; t < 20; ++t) {
    const CMatrix h = random_hermitian(4, rng);
    const auto got = eigvals_desc(h);
    const auto ref = oracle::charpoly_eigenvalues(h);
    for (int i = 0; i < 4; ++i) CHECK(got[i] == doctest::Approx(ref[i]).epsilon(1e-7));
    for (int i = 0; i + 1 < 4; ++i) CHECK(got[i] >= got[i + 1]);
  }
  CMatrix bad(2, 2);
  bad << 0.0, 1.0, 0.0, 0.0;
  CHECK_THROWS_AS(eigvals_desc(bad), NotHermitianError);
}

TEST_CASE("trace norm") {
  CHECK(trace_norm(CMatrix(CMatrix::Zero(3, 3))) == 0.0);
  const CMatrix diff = DensityMatrix::basis(2, 0).matrix() - DensityMatrix::basis(2, 1).matrix();
  CHECK(trace_norm(diff) == doctest::Approx(2.0));
  Rng rng(3);
  for (int t = 0; t < 10; ++t) {
    CHECK(trace_norm(random_state(3, 3, rng)) == doctest::Approx(1.0));
    const CMatrix h = random_hermitian(5, rng);
    CHECK(trace_norm(h) == doctest::Approx(oracle::trace_norm_svd(h)).epsilon(1e-10));
  }
}

TEST_CASE("mirsky gap") {
  Rng rng(5);
  const DensityMatrix r = random_state(3, 3, rng);
  CHECK(mirsky_gap(r, r) == doctest::Approx(0.0));
  CHECK(mirsky_gap(DensityMatrix::diagonal({1, 0}), DensityMatrix::diagonal({0.5, 0.5})) == doctest::Approx(1.0));
  for (int t = 0; t < 20; ++t) {
    const DensityMatrix a = random_state(4, 4, rng), b = random_state(4, 1 + t % 4, rng);
    CHECK(mirsky_gap(a, b) <= trace_norm(CMatrix(a.matrix() - b.matrix())) + 1e-12);
  }
  CHECK_THROWS_AS(mirsky_gap(DensityMatrix::maximally_mixed(2), DensityMatrix::maximally_mixed(3)), DimensionError);
}

TEST_CASE("entropies") {
  CHECK(von_neumann_entropy(DensityMatrix::basis(3, 1)) == doctest::Approx(0.0));
  CHECK(von_neumann_entropy(DensityMatrix::maximally_mixed(2)) == doctest::Approx(std::log(2.0)));
  CHECK(von_neumann_entropy(DensityMatrix::diagonal({0.9, 0.1})) == doctest::Approx(binary_entropy(0.1)));
  CHECK(binary_entropy(0.5) == doctest::Approx(std::log(2.0)));
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(g_func(0.0) == 0.0);
  CHECK(g_func(1.0) == doctest::Approx(2.0 * std::log(2.0)));
  // g(x) = (x+1) ln(x+1) - x ln x.
  for (double x : {0.01, 0.3, 2.0, 17.0, 1e4})
    CHECK(g_func(x) == doctest::Approx((x + 1) * std::log(x + 1) - x * std::log(x)).epsilon(1e-12));

  // Unitary invariance.
  Rng rng(8);
  const DensityMatrix r = random_state(4, 4, rng);
  const CMatrix u = random_unitary(4, rng);
  CHECK(von_neumann_entropy(DensityMatrix(u * r.matrix() * u.adjoint())) ==
        doctest::Approx(von_neumann_entropy(r)).epsilon(1e-10));
}

TEST_CASE("relative entropy") {
  Rng rng(13);
  const DensityMatrix r = random_state(3, 3, rng);
  CHECK(relative_entropy(r, r) == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(relative_entropy(DensityMatrix::basis(2, 0), DensityMatrix::basis(2, 1)) ==
        std::numeric_limits<double>::infinity());
  const double kl = 0.5 * std::log(0.5 / 0.9) + 0.5 * std::log(0.5 / 0.1);
  CHECK(relative_entropy(DensityMatrix::diagonal({0.5, 0.5}), DensityMatrix::diagonal({0.9, 0.1})) ==
        doctest::Approx(kl));
  // D(rho||I/d) = ln d - S(rho).
  CHECK(relative_entropy(r, DensityMatrix::maximally_mixed(3)) ==
        doctest::Approx(std::log(3.0) - von_neumann_entropy(r)).epsilon(1e-10));
  for (int t = 0; t < 10; ++t) CHECK(relative_entropy(random_state(3, 3, rng), random_state(3, 3, rng)) >= 0.0);
}

TEST_CASE("fidelity and Bures distance") {
  Rng rng(17);
  const DensityMatrix r = random_state(3, 3, rng);
  CHECK(fidelity(r, r) == doctest::Approx(1.0));
  CHECK(fidelity(DensityMatrix::basis(2, 0), DensityMatrix::basis(2, 1)) == doctest::Approx(0.0));
  CHECK(fidelity(DensityMatrix::basis(2, 0), DensityMatrix::maximally_mixed(2)) == doctest::Approx(0.5));
  CHECK(bures_distance(r, r) == doctest::Approx(0.0).epsilon(1e-7));
  CHECK(bures_distance(DensityMatrix::basis(2, 0), DensityMatrix::basis(2, 1)) == doctest::Approx(std::sqrt(2.0)));

  for (int t = 0; t < 30; ++t) {
    const DensityMatrix a = random_state(3, 1 + t % 3, rng), b = random_state(3, 3, rng);
    const double f = fidelity(a, b), tn = trace_norm(CMatrix(a.matrix() - b.matrix()));
    CHECK(f >= 0.0);
    CHECK(f <= 1.0 + 1e-12);
    // Fuchs-van de Graaf sandwich with squared fidelity convention F = ||sqrt a sqrt b||_1^2.
    CHECK(1.0 - std::sqrt(f) <= 0.5 * tn + 1e-10);
    CHECK(0.5 * tn <= std::sqrt(1.0 - f) + 1e-10);
    const double beta = bures_distance(a, b);
    CHECK(0.5 * beta * beta <= 0.5 * tn + 1e-10);
    CHECK(0.5 * tn <= beta * std::sqrt(1.0 - 0.25 * beta * beta) + 1e-10);
  }
  // Pure states: |<a|b>|^2.
  const PureState pa = random_pure(4, rng), pb = random_pure(4, rng);
  CHECK(fidelity(pa.density(), pb.density()) == doctest::Approx(std::norm(pa.vector().dot(pb.vector()))));
}

TEST_CASE("partial trace") {
  Rng rng(19);
  const DensityMatrix a = random_state(2, 2, rng), b = random_state(3, 3, rng);
  const DensityMatrix ab(kron(a.matrix(), b.matrix()));
  CHECK((partial_trace(ab, 2, 3, Keep::A).matrix() - a.matrix()).norm() < 1e-12);
  CHECK((partial_trace(ab, 2, 3, Keep::B).matrix() - b.matrix()).norm() < 1e-12);
  CHECK((partial_trace(bell(), 2, 2, Keep::A).matrix() - DensityMatrix::maximally_mixed(2).matrix()).norm() < 1e-12);
  for (int t = 0; t < 10; ++t) {
    const DensityMatrix r = random_state(6, 6, rng);
    const CMatrix x = random_hermitian(2, rng);
    const CMatrix ra = partial_trace(r, 2, 3, Keep::A).matrix();
    const complex lhs = (x * ra).trace();
    const complex rhs = (kron(x, CMatrix::Identity(3, 3)) * r.matrix()).trace();
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }
  const PureState psi = random_pure(6, rng);
  CHECK((reduced_state(psi, 2, 3, Keep::B).matrix() - partial_trace(psi.density(), 2, 3, Keep::B).matrix()).norm() <
        1e-12);
  CHECK_THROWS_AS(partial_trace(random_state(6, 6, rng), 4, 2, Keep::A), DimensionError);
}

TEST_CASE("conditional entropy") {
  Rng rng(23);
  const DensityMatrix a = random_state(2, 2, rng), b = random_state(2, 2, rng);
  CHECK(conditional_entropy(DensityMatrix(kron(a.matrix(), b.matrix())), 2, 2) ==
        doctest::Approx(von_neumann_entropy(a)).epsilon(1e-10));
  CHECK(conditional_entropy(bell(), 2, 2) == doctest::Approx(-std::log(2.0)));
  const Ensemble mu = random_ensemble(3, 4, rng);
  CHECK(conditional_entropy(qc_state(mu), 3, 4) == doctest::Approx(qc_conditional_entropy(mu)).epsilon(1e-10));
}

TEST_CASE("positive part and sign") {
  Rng rng(29);
  const DensityMatrix r = random_state(3, 3, rng);
  CHECK((positive_part(r) - r.matrix()).norm() < 1e-10);
  CHECK((positive_part(diag({0.3, -0.2})) - diag({0.3, 0.0})).norm() < 1e-14);
  for (int t = 0; t < 10; ++t) {
    const CMatrix h = random_hermitian(4, rng);
    CHECK((positive_part(h) - positive_part(CMatrix(-h)) - h).norm() < 1e-10);
    const CMatrix s = sign_operator(h);
    CHECK((s * s - CMatrix::Identity(4, 4)).norm() < 1e-10);
    CHECK((s * h).trace().real() == doctest::Approx(trace_norm(h)).epsilon(1e-10));
  }
}

TEST_CASE("psd sqrt and kron") {
  Rng rng(31);
  const DensityMatrix r = random_state(4, 4, rng);
  const CMatrix s = psd_sqrt(r.matrix());
  CHECK((s * s - r.matrix()).norm() < 1e-10);
  const CMatrix a = random_hermitian(2, rng), b = random_hermitian(3, rng);
  const CMatrix k = kron(a, b);
  CHECK(k.rows() == 6);
  CHECK(std::abs(k(1 * 3 + 2, 0 * 3 + 1) - a(1, 0) * b(2, 1)) < 1e-14);
}

}  // TEST_SUITE
