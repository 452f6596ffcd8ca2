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

#include "qens/random.hpp"

#include <cmath>

#include "qens/channel.hpp"

namespace qens {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed ^ (index * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

CVector gaussian_vector(int dim, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  CVector v(dim);
  for (int i = 0; i < dim; ++i) {
    const double re = n(rng);
    const double im = n(rng);
    v(i) = complex(re, im);
  }
  return v;
}

CMatrix gaussian_matrix(int rows, int cols, Rng& rng) {
  CMatrix m(rows, cols);
  for (int j = 0; j < cols; ++j) m.col(j) = gaussian_vector(rows, rng);
  return m;
}

PureState random_pure(int dim, Rng& rng) {
  if (dim <= 0) throw DimensionError("random_pure: dimension must be positive");
  return PureState::normalized(gaussian_vector(dim, rng));
}

DensityMatrix random_state(int dim, int rank, Rng& rng) {
  if (dim <= 0 || rank <= 0 || rank > dim) throw DimensionError("random_state: need 1 <= rank <= dim");
  const CMatrix g = gaussian_matrix(dim, rank, rng);
  CMatrix r = g * g.adjoint();
  return DensityMatrix::trusted(r / r.trace().real());
}

namespace {

// Q factor with the phases of diag(R) removed, which makes it Haar.
CMatrix haar_isometry(int rows, int cols, Rng& rng) {
  const CMatrix g = gaussian_matrix(rows, cols, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(rows, cols);
  const CMatrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  for (int j = 0; j < cols; ++j) {
    const complex d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

}  // namespace

CMatrix random_unitary(int dim, Rng& rng) {
  if (dim <= 0) throw DimensionError("random_unitary: dimension must be positive");
  return haar_isometry(dim, dim, rng);
}

CMatrix random_hermitian(int dim, Rng& rng) {
  const CMatrix g = gaussian_matrix(dim, dim, rng);
  return 0.5 * (g + g.adjoint());
}

KrausChannel random_channel(int dim_in, int dim_out, int env_dim, Rng& rng) {
  if (dim_in <= 0 || dim_out <= 0 || env_dim <= 0 || dim_out * env_dim < dim_in)
    throw DimensionError("random_channel: need dim_out * env_dim >= dim_in");
  const CMatrix v = haar_isometry(dim_out * env_dim, dim_in, rng);
  std::vector<CMatrix> ops(env_dim, CMatrix(dim_out, dim_in));
  for (int b = 0; b < dim_out; ++b)
    for (int e = 0; e < env_dim; ++e) ops[e].row(b) = v.row(b * env_dim + e);
  return KrausChannel(dim_in, dim_out, std::move(ops));
}

std::vector<double> dirichlet_weights(int n, Rng& rng) {
  if (n <= 0) throw DimensionError("dirichlet_weights: need at least one weight");
  std::exponential_distribution<double> ex(1.0);
  std::vector<double> w(n);
  double s = 0.0;
  for (double& x : w) s += (x = ex(rng));
  for (double& x : w) x /= s;
  return w;
}

Ensemble random_ensemble(int dim, int members, Rng& rng, int rank) {
  const std::vector<double> w = dirichlet_weights(members, rng);
  std::vector<Member> m;
  for (int i = 0; i < members; ++i) m.push_back({w[i], random_state(dim, rank == 0 ? dim : rank, rng)});
  return Ensemble(std::move(m));
}

}  // namespace qens
