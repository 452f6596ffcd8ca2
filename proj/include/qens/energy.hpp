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

#ifndef QENS_ENERGY_HPP
#define QENS_ENERGY_HPP

#include <functional>
#include <optional>
#include <vector>

#include "qens/ensemble.hpp"
#include "qens/matrix.hpp"

namespace qens {

// Thrown when a target energy lies outside the achievable interval.
struct EnergyRangeError : RangeError {
  EnergyRangeError(const std::string& what, double lo, double hi) : RangeError(what), lo(lo), hi(hi) {}
  double lo;
  double hi;
};

enum class ClosedForm { None, Oscillator };

// Nondecreasing spectrum E_0 <= E_1 <= ... in the standard basis.
//
// A spectrum with a level generator is a truncation of an infinite spectrum and
// may be enlarged on demand (up to kMaxLevels). Without a generator the list is
// taken to be the complete spectrum of a finite-dimensional Hamiltonian.
class HamiltonianSpec {
 public:
  static constexpr int kMaxLevels = 2000;

  HamiltonianSpec() = default;
  explicit HamiltonianSpec(std::vector<double> eigenvalues, ClosedForm closed_form = ClosedForm::None);
  HamiltonianSpec(int levels, std::function<double(int)> generator);

  // E_k = k, truncated to `levels`.
  static HamiltonianSpec oscillator(int levels);

  int levels() const { return static_cast<int>(e_.size()); }
  const std::vector<double>& eigenvalues() const { return e_; }
  double ground() const { return e_.front(); }
  bool ground_shifted() const { return e_.front() == 0.0; }
  ClosedForm closed_form() const { return closed_form_; }
  bool extendable() const { return static_cast<bool>(generator_); }
  HamiltonianSpec extended(int levels) const;

  // Mean energy of the uniform state on all stored levels.
  double max_mean() const;
  int ground_degeneracy() const;

 private:
  std::vector<double> e_;
  ClosedForm closed_form_ = ClosedForm::None;
  std::function<double(int)> generator_;
};

struct GibbsSolution {
  double beta = 0.0;  // +inf for the ground-state limit
  std::vector<double> populations;
  double mean_energy = 0.0;
  double entropy = 0.0;
  bool tail_warning = false;
  DensityMatrix state() const { return DensityMatrix::diagonal(populations); }
};

double passive_energy(const std::vector<double>& spectrum_desc, const HamiltonianSpec& h);
double passive_energy(const CMatrix& psd, const HamiltonianSpec& h);
double passive_energy(const DensityMatrix& rho, const HamiltonianSpec& h);
DensityMatrix passive_rearrangement(const DensityMatrix& rho, const HamiltonianSpec& h);
double mean_energy(const DensityMatrix& rho, const HamiltonianSpec& h);
double ergotropy(const DensityMatrix& rho, const HamiltonianSpec& h);
double avg_passive_energy(const Ensemble& mu, const HamiltonianSpec& h);

GibbsSolution solve_gibbs(const HamiltonianSpec& h, double energy);

// Maximal entropy at mean energy <= E.
double F_H(const HamiltonianSpec& h, double energy);

// Sum_k E^psv([p_k rho_k - eps I]_+).
double truncated_passive_energy(const Ensemble& mu, const HamiltonianSpec& h, double eps);

// x F_H(E/x) <= y F_H(E/y) for 0 < x < y.
bool wl_check(const HamiltonianSpec& h, double energy, double x, double y);

}  // namespace qens

#endif  // QENS_ENERGY_HPP
