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

#include "doctest.h"
#include "qens/channel.hpp"
#include "qens/energy.hpp"
#include "qens/metrics.hpp"
#include "qens/random.hpp"

using namespace qens;

namespace {

SearchOptions quick() {
  SearchOptions o;
  o.restarts = 8;
  o.max_steps = 200;
  return o;
}

}  // namespace

TEST_SUITE("channel") {

TEST_CASE("Kraus validation") {
  CHECK_THROWS(KrausChannel(2, 2, {CMatrix::Identity(2, 2) * 0.5}));
  CHECK_THROWS(KrausChannel(2, 2, {}));
  CHECK_THROWS(KrausChannel(2, 3, {CMatrix::Identity(2, 2)}));
  CHECK_NOTHROW(KrausChannel(2, 2, {CMatrix::Identity(2, 2)}));
}

TEST_CASE("apply") {
  Rng rng(101);
  const DensityMatrix r = random_state(3, 3, rng);
  CHECK((apply(identity_channel(3), r).matrix() - r.matrix()).norm() < 1e-14);
  const DensityMatrix flag = DensityMatrix::basis(4, 3);
  CHECK((apply(erasure(3, 1.0), r).matrix() - flag.matrix()).norm() < 1e-14);
  const auto half = apply(erasure(3, 0.25), r).matrix();
  CHECK(std::abs(half(3, 3) - 0.25) < 1e-14);
  CHECK((half.topLeftCorner(3, 3) - 0.75 * r.matrix()).norm() < 1e-14);
  for (int t = 0; t < 10; ++t) {
    const KrausChannel phi = random_channel(3, 2 + t % 3, 2 + t % 3, rng);
    const DensityMatrix out = apply(phi, random_state(3, 3, rng));
    CHECK(out.matrix().trace().real() == doctest::Approx(1.0));
    CHECK(eigvals_desc(out).back() >= -1e-12);
    // Adjoint duality Tr[Y phi(X)] = Tr[phi*(Y) X].
    const CMatrix x = random_hermitian(3, rng), y = random_hermitian(phi.dim_out(), rng);
    CHECK(std::abs((y * phi(x)).trace() - (phi.adjoint(y) * x).trace()) < 1e-12);
  }
  CHECK_THROWS_AS(identity_channel(2)(CMatrix::Identity(3, 3)), DimensionError);
}

TEST_CASE("Choi matrix") {
  CHECK(choi_rank(identity_channel(2)) == 1);
  CHECK(choi_rank(erasure(2, 0.3)) == 3);
  CHECK(choi_rank(erasure(2, 0.0)) == 1);
  CHECK(choi_rank(fock_dephasing(4)) == 5);
  Rng rng(103);
  const KrausChannel phi = random_channel(2, 3, 2, rng);
  CHECK(choi_rank(phi) == 2);
  // Partial trace over the output of the Choi state is maximally mixed on the input.
  const DensityMatrix j = choi_matrix(phi);
  CHECK((partial_trace(j, 3, 2, Keep::B).matrix() - DensityMatrix::maximally_mixed(2).matrix()).norm() < 1e-12);
}

TEST_CASE("average output entropy and Holevo quantity") {
  Rng rng(107);
  std::vector<DensityMatrix> pure;
  for (int i = 0; i < 3; ++i) pure.push_back(random_pure(3, rng).density());
  const Ensemble mu({0.2, 0.5, 0.3}, pure);
  CHECK(aoe(identity_channel(3), mu) == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(aoe(erasure(3, 0.3), mu) == doctest::Approx(binary_entropy(0.3)).epsilon(1e-10));
  CHECK(holevo_chi(identity_channel(3), Ensemble::singleton(pure[0])) == doctest::Approx(0.0).epsilon(1e-12));
  const Ensemble basis({0.25, 0.25, 0.25, 0.25}, {DensityMatrix::basis(4, 0), DensityMatrix::basis(4, 1),
                                                  DensityMatrix::basis(4, 2), DensityMatrix::basis(4, 3)});
  CHECK(holevo_chi(basis) == doctest::Approx(std::log(4.0)));
  for (int t = 0; t < 10; ++t) {
    const KrausChannel phi = random_channel(3, 2, 2, rng);
    const Ensemble e = random_ensemble(3, 3, rng);
    CHECK(holevo_chi(phi, e) == doctest::Approx(holevo_chi_relative(phi, e)).epsilon(1e-9));
    CHECK(aoe(phi, e) <= std::log(2.0) + 1e-12);
  }
}

TEST_CASE("norm estimates") {
  Rng rng(109);
  const KrausChannel phi = random_channel(2, 2, 2, rng);
  CHECK(norm_1to1_lower(phi, phi, quick()).value < 1e-12);
  CHECK(diamond_lower(phi, phi, quick()).value < 1e-12);
  for (auto [p, q] : {std::pair{0.1, 0.4}, std::pair{0.7, 0.2}}) {
    CHECK(norm_1to1_lower(erasure(2, p), erasure(2, q), quick()).value == doctest::Approx(2.0 * std::abs(p - q)));
    CHECK(diamond_lower(erasure(3, p), erasure(3, q), quick()).value == doctest::Approx(2.0 * std::abs(p - q)));
  }
  const double eps = 0.2;
  const KrausChannel mixed = mix_with_state(3, eps, random_state(3, 3, rng));
  CHECK(diamond_lower(mixed, identity_channel(3), quick()).value <= 2.0 * eps + 1e-10);
  for (int t = 0; t < 5; ++t) {
    const KrausChannel a = random_channel(2, 2, 2, rng), b = mix(a, random_channel(2, 2, 2, rng), 0.1);
    const auto one = norm_1to1_lower(a, b, quick());
    const auto dia = diamond_lower(a, b, quick());
    CHECK(dia.value >= one.value - 1e-12);
    CHECK(dia.value <= 2.0 * 0.1 + 1e-10);
    CHECK(difference_norm_at(tensor_identity(a, 2), tensor_identity(b, 2), dia.witness) ==
          doctest::Approx(dia.value).epsilon(1e-10));
  }
  // Energy constraint at the top of the spectrum recovers the plain search.
  const HamiltonianSpec h({0.0, 1.0});
  const auto ec = ec_diamond_lower(erasure(2, 0.1), erasure(2, 0.3), h, 1.0, quick());
  CHECK(ec.value == doctest::Approx(0.4));
  CHECK(ec_diamond_lower(erasure(2, 0.1), erasure(2, 0.3), h, 0.0, quick()).value == doctest::Approx(0.4));
  CHECK_THROWS(ec_diamond_lower(erasure(2, 0.1), erasure(2, 0.3), HamiltonianSpec({1.0, 2.0}), 0.5, quick()));
}

TEST_CASE("fixed seeds make the search reproducible") {
  Rng rng(113);
  const KrausChannel a = random_channel(3, 3, 2, rng), b = random_channel(3, 3, 2, rng);
  SearchOptions o = quick();
  o.workers = 1;
  const double serial = diamond_lower(a, b, o).value;
  o.workers = 3;
  CHECK(diamond_lower(a, b, o).value == serial);
}

TEST_CASE("catalog") {
  const KrausChannel deph = fock_dephasing(3);
  CHECK(deph.kraus().size() == 4);
  Rng rng(127);
  const DensityMatrix r = random_state(4, 4, rng);
  const CMatrix out = deph(r.matrix());
  CHECK((out - CMatrix(r.matrix().diagonal().asDiagonal())).norm() < 1e-14);
  CHECK_THROWS(erasure(2, 1.5));
  CHECK_THROWS(mix_with_state(2, -0.1, DensityMatrix::maximally_mixed(2)));
  const KrausChannel m = mix_with_state(2, 0.3, DensityMatrix::basis(2, 1));
  CHECK((m(DensityMatrix::basis(2, 0).matrix()) - DensityMatrix::diagonal({0.7, 0.3}).matrix()).norm() < 1e-14);
}

TEST_CASE("coherent states") {
  const PureState vac = coherent_state(0.0, 10);
  CHECK(std::abs(vac.vector()(0) - 1.0) < 1e-14);
  const complex z1(0.7, -0.3), z2(-0.2, 0.5);
  const PureState a = coherent_state(z1, 60), b = coherent_state(z2, 60);
  CHECK(std::abs(a.vector().dot(b.vector()) - coherent_overlap(z1, z2)) < 1e-12);
  CHECK(std::norm(coherent_overlap(z1, z2)) == doctest::Approx(std::exp(-std::norm(z1 - z2))));
  // Mean photon number |z|^2.
  double n = 0.0;
  for (int k = 0; k <= 60; ++k) n += k * std::norm(a.vector()(k));
  CHECK(n == doctest::Approx(std::norm(z1)).epsilon(1e-10));
  // D(z)|0> is the coherent state.
  const CMatrix d = displacement_operator(z1, 40);
  CHECK((d.col(0) - coherent_state(z1, 40).vector()).norm() < 1e-10);
  const DensityMatrix th = displaced_thermal_state(z1, 0.0, 40);
  CHECK(fidelity(th, coherent_state(z1, 40).density()) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK_THROWS(coherent_state(0.0, kMaxFockLevel + 1));
}

}  // TEST_SUITE
