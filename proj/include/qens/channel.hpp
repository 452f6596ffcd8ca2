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

#ifndef QENS_CHANNEL_HPP
#define QENS_CHANNEL_HPP

#include <cstdint>
#include <vector>

#include "qens/energy.hpp"
#include "qens/ensemble.hpp"
#include "qens/matrix.hpp"

namespace qens {

// CPTP map rho -> sum_k K_k rho K_k^dagger.
class KrausChannel {
 public:
  KrausChannel() = default;
  KrausChannel(int dim_in, int dim_out, std::vector<CMatrix> kraus);

  int dim_in() const { return din_; }
  int dim_out() const { return dout_; }
  const std::vector<CMatrix>& kraus() const { return ops_; }

  // Action on an arbitrary dim_in x dim_in matrix (linear extension).
  CMatrix operator()(const CMatrix& x) const;
  // Adjoint map X -> sum_k K_k^dagger X K_k.
  CMatrix adjoint(const CMatrix& y) const;

 private:
  struct Elementary {
    int row = -1, col = -1;
    complex value;
  };
  int din_ = 0, dout_ = 0;
  std::vector<CMatrix> ops_;
  std::vector<Elementary> elementary_;  // single-entry operators (row >= 0)
};

DensityMatrix apply(const KrausChannel& phi, const DensityMatrix& rho);
Ensemble apply(const KrausChannel& phi, const Ensemble& mu);

DensityMatrix choi_matrix(const KrausChannel& phi);
int choi_rank(const KrausChannel& phi);

double aoe(const KrausChannel& phi, const Ensemble& mu);
// Entropy form S(Phi(avg)) - aoe.
double holevo_chi(const KrausChannel& phi, const Ensemble& mu);
// Relative-entropy form sum_i p_i D(Phi(rho_i) || Phi(avg)).
double holevo_chi_relative(const KrausChannel& phi, const Ensemble& mu);
double holevo_chi(const Ensemble& mu);

// (1 - t) phi + t psi.
KrausChannel mix(const KrausChannel& phi, const KrausChannel& psi, double t);
// phi (x) id_R.
KrausChannel tensor_identity(const KrausChannel& phi, int dim_ref);

enum class NormKind { OneToOneLower, DiamondLower, EnergyConstrainedLower, ClosedForm };

struct NormEstimate {
  double value = 0.0;
  NormKind kind = NormKind::OneToOneLower;
  CVector witness;  // pure input; bipartite inputs use index a * dim_ref + r
  int dim_ref = 1;
};

struct SearchOptions {
  int restarts = 64;
  std::uint64_t seed = 0x5eed;
  int max_steps = 500;
  double tol = 1e-10;
  int workers = 1;
};

// ||(phi - psi)(psi psi^dagger)||_1 for a pure input.
double difference_norm_at(const KrausChannel& phi, const KrausChannel& psi, const CVector& input);

// Lower bounds on ||phi - psi||_{1->1} and ||phi - psi||_diamond by ascent
// over pure inputs.
NormEstimate norm_1to1_lower(const KrausChannel& phi, const KrausChannel& psi, const SearchOptions& opt = {});
NormEstimate diamond_lower(const KrausChannel& phi, const KrausChannel& psi, const SearchOptions& opt = {});
// Bipartite search restricted to inputs with Tr H rho_A <= E.
NormEstimate ec_diamond_lower(const KrausChannel& phi, const KrausChannel& psi, const HamiltonianSpec& h,
                              double energy, const SearchOptions& opt = {});

// Catalog.
KrausChannel identity_channel(int d);
// C^d -> C^{d+1}; the erasure flag is the last basis vector.
KrausChannel erasure(int d, double p);
// (1 - eps) rho + eps Tr(rho) omega.
KrausChannel mix_with_state(int d, double eps, const DensityMatrix& omega);
// Complete dephasing in the Fock basis |0>, ..., |N_max>.
KrausChannel fock_dephasing(int n_max);

inline constexpr int kMaxFockLevel = 512;

PureState coherent_state(complex zeta, int n_max);
complex coherent_overlap(complex z1, complex z2);

// exp(zeta a^dagger - conj(zeta) a) on Fock levels 0..n_max, computed on a
// larger truncation and cropped.
CMatrix displacement_operator(complex zeta, int n_max);
// D(zeta) gamma(N0) D(zeta)^dagger cropped to 0..n_max and renormalised.
DensityMatrix displaced_thermal_state(complex zeta, double n0, int n_max);

}  // namespace qens

#endif  // QENS_CHANNEL_HPP
