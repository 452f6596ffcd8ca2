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

#ifndef QENS_RANDOM_HPP
#define QENS_RANDOM_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "qens/ensemble.hpp"
#include "qens/matrix.hpp"

namespace qens {

class KrausChannel;

using Rng = std::mt19937_64;

// splitmix64 finaliser of seed ^ hash(index); used for per-trial streams.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

CVector gaussian_vector(int dim, Rng& rng);
CMatrix gaussian_matrix(int rows, int cols, Rng& rng);

PureState random_pure(int dim, Rng& rng);
// Normalised Gram matrix G G^dagger of a dim x rank complex Gaussian G.
DensityMatrix random_state(int dim, int rank, Rng& rng);
CMatrix random_unitary(int dim, Rng& rng);
CMatrix random_hermitian(int dim, Rng& rng);
// Haar isometry C^dim_in -> C^dim_out (x) C^env, split into env Kraus blocks.
KrausChannel random_channel(int dim_in, int dim_out, int env_dim, Rng& rng);
std::vector<double> dirichlet_weights(int n, Rng& rng);
// Dirichlet(1) weights, states of the given rank (0 means full rank).
Ensemble random_ensemble(int dim, int members, Rng& rng, int rank = 0);

}  // namespace qens

#endif  // QENS_RANDOM_HPP
