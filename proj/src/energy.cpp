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

#include "qens/energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace qens {

HamiltonianSpec::HamiltonianSpec(std::vector<double> eigenvalues, ClosedForm closed_form)
    : e_(std::move(eigenvalues)), closed_form_(closed_form) {
  if (e_.size() < 2) throw DimensionError("Hamiltonian needs at least two levels");
  for (std::size_t k = 0; k < e_.size(); ++k) {
    if (!std::isfinite(e_[k])) throw std::invalid_argument("Hamiltonian eigenvalues must be finite");
    if (k > 0 && e_[k] < e_[k - 1]) throw std::invalid_argument("Hamiltonian eigenvalues must be nondecreasing");
  }
  if (closed_form_ == ClosedForm::Oscillator) {
    for (std::size_t k = 0; k < e_.size(); ++k)
      if (e_[k] != static_cast<double>(k)) throw std::invalid_argument("oscillator tag requires E_k = k");
    generator_ = [](int k) { return static_cast<double>(k); };
  }
}

HamiltonianSpec::HamiltonianSpec(int levels, std::function<double(int)> generator) {
  if (levels < 2) throw DimensionError("Hamiltonian needs at least two levels");
  if (levels > kMaxLevels) throw DimensionError("Hamiltonian truncation exceeds 2000 levels");
  std::vector<double> e(levels);
  for (int k = 0; k < levels; ++k) e[k] = generator(k);
  *this = HamiltonianSpec(std::move(e));
  generator_ = std::move(generator);
}

HamiltonianSpec HamiltonianSpec::oscillator(int levels) {
  std::vector<double> e(levels);
  std::iota(e.begin(), e.end(), 0.0);
  return HamiltonianSpec(std::move(e), ClosedForm::Oscillator);
}

HamiltonianSpec HamiltonianSpec::extended(int levels) const {
  if (!generator_) throw DimensionError("spectrum has no generator and cannot be enlarged");
  if (levels <= this->levels()) return *this;
  if (levels > kMaxLevels) throw DimensionError("Hamiltonian truncation exceeds 2000 levels");
  HamiltonianSpec out(levels, generator_);
  out.closed_form_ = closed_form_;
  return out;
}

double HamiltonianSpec::max_mean() const {
  return std::accumulate(e_.begin(), e_.end(), 0.0) / static_cast<double>(e_.size());
}

int HamiltonianSpec::ground_degeneracy() const {
  int n = 0;
  for (double x : e_)
    if (x == e_.front()) ++n;
  return n;
}

namespace {

const HamiltonianSpec& fit_levels(const HamiltonianSpec& h, int dim, HamiltonianSpec& storage) {
  if (dim <= h.levels()) return h;
  if (!h.extendable()) throw DimensionError("state dimension exceeds the number of Hamiltonian levels");
  storage = h.extended(dim);
  return storage;
}

struct Moments {
  double z;
  double mean;
};

// Shifted partition function and mean at inverse temperature beta.
Moments moments(const std::vector<double>& s, double beta) {
  double z = 0.0, m = 0.0;
  for (double x : s) {
    const double w = std::exp(-beta * x);
    z += w;
    m += w * x;
  }
  return {z, m / z};
}

GibbsSolution solve_fixed(const HamiltonianSpec& h, double energy) {
  const auto& e = h.eigenvalues();
  const double e0 = e.front();
  std::vector<double> s(e.size());
  for (std::size_t k = 0; k < e.size(); ++k) s[k] = e[k] - e0;
  const double hi_mean = h.max_mean() - e0;
  const double t = energy - e0;
  const double tol = 1e-10 * std::max(1.0, std::abs(energy));
  if (t < -tol || t > hi_mean + tol)
    throw EnergyRangeError("energy outside the achievable interval of the truncated spectrum", e0, e0 + hi_mean);

  GibbsSolution sol;
  const int K = static_cast<int>(s.size());
  sol.populations.assign(K, 0.0);
  if (t <= 0.0) {
    const int deg = h.ground_degeneracy();
    for (int k = 0; k < deg; ++k) sol.populations[k] = 1.0 / deg;
    sol.beta = std::numeric_limits<double>::infinity();
    sol.mean_energy = e0;
    sol.entropy = std::log(static_cast<double>(deg));
    return sol;
  }
  double beta = 0.0;
  if (std::abs(t - hi_mean) > tol) {
    const double bmin = 1e-12, bmax = 1e4;
    double lo, hi;
    bool geometric = true;
    if (t >= moments(s, bmin).mean) {
      lo = 0.0;
      hi = bmin;
      geometric = false;
    } else {
      lo = bmin;
      hi = bmax;
      if (moments(s, bmax).mean > t)
        throw EnergyRangeError("energy too close to the ground level for the beta bracket", e0, e0 + hi_mean);
    }
    for (int it = 0; it < 400; ++it) {
      const double mid = geometric ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (moments(s, mid).mean > t)
        lo = mid;
      else
        hi = mid;
    }
    beta = 0.5 * (lo + hi);
  }
  const Moments mo = moments(s, beta);
  for (int k = 0; k < K; ++k) sol.populations[k] = std::exp(-beta * s[k]) / mo.z;
  sol.beta = beta;
  sol.mean_energy = e0 + mo.mean;
  sol.entropy = beta * mo.mean + std::log(mo.z);
  sol.tail_warning = sol.populations.back() >= 1e-12;
  if (std::abs(mo.mean - t) > tol) throw std::runtime_error("Gibbs bisection did not reach the energy tolerance");
  return sol;
}

}  // namespace

double passive_energy(const std::vector<double>& spectrum_desc, const HamiltonianSpec& h) {
  HamiltonianSpec tmp;
  const auto& hh = fit_levels(h, static_cast<int>(spectrum_desc.size()), tmp);
  const auto& e = hh.eigenvalues();
  double s = 0.0;
  for (std::size_t i = 0; i < spectrum_desc.size(); ++i) s += e[i] * std::max(0.0, spectrum_desc[i]);
  return s;
}

double passive_energy(const CMatrix& psd, const HamiltonianSpec& h) { return passive_energy(eigvals_desc(psd), h); }

double passive_energy(const DensityMatrix& rho, const HamiltonianSpec& h) {
  return passive_energy(eigvals_desc(rho), h);
}

DensityMatrix passive_rearrangement(const DensityMatrix& rho, const HamiltonianSpec& h) {
  if (rho.dim() > h.levels() && !h.extendable())
    throw DimensionError("state dimension exceeds the number of Hamiltonian levels");
  auto l = eigvals_desc(rho);
  CMatrix m = CMatrix::Zero(rho.dim(), rho.dim());
  for (int i = 0; i < rho.dim(); ++i) m(i, i) = std::max(0.0, l[i]);
  return DensityMatrix::trusted(std::move(m));
}

double mean_energy(const DensityMatrix& rho, const HamiltonianSpec& h) {
  HamiltonianSpec tmp;
  const auto& e = fit_levels(h, rho.dim(), tmp).eigenvalues();
  double s = 0.0;
  for (int i = 0; i < rho.dim(); ++i) s += e[i] * rho.matrix()(i, i).real();
  return s;
}

double ergotropy(const DensityMatrix& rho, const HamiltonianSpec& h) {
  return std::max(0.0, mean_energy(rho, h) - passive_energy(rho, h));
}

double avg_passive_energy(const Ensemble& mu, const HamiltonianSpec& h) {
  double s = 0.0;
  for (const auto& m : mu.members())
    if (m.weight > 0.0) s += m.weight * passive_energy(m.state, h);
  return s;
}

GibbsSolution solve_gibbs(const HamiltonianSpec& h, double energy) {
  if (!h.extendable()) return solve_fixed(h, energy);
  HamiltonianSpec cur = h;
  while (true) {
    const bool in_range = energy <= cur.max_mean();
    if (in_range) {
      GibbsSolution sol = solve_fixed(cur, energy);
      if (!sol.tail_warning || cur.levels() >= HamiltonianSpec::kMaxLevels) return sol;
    } else if (cur.levels() >= HamiltonianSpec::kMaxLevels) {
      return solve_fixed(cur, energy);  // throws the range error
    }
    cur = cur.extended(std::min(2 * cur.levels(), HamiltonianSpec::kMaxLevels));
  }
}

double F_H(const HamiltonianSpec& h, double energy) {
  if (h.closed_form() == ClosedForm::Oscillator) {
    if (energy < 0.0) throw EnergyRangeError("energy below the ground level", 0.0, std::numeric_limits<double>::infinity());
    return g_func(energy);
  }
  const GibbsSolution sol = solve_gibbs(h, energy);
  if (h.extendable() && sol.tail_warning)
    throw EnergyRangeError("tail mass check failed at the maximal truncation", h.ground(), h.extended(HamiltonianSpec::kMaxLevels).max_mean());
  return sol.entropy;
}

double truncated_passive_energy(const Ensemble& mu, const HamiltonianSpec& h, double eps) {
  if (!(eps > 0.0)) throw RangeError("truncated_passive_energy: eps must be positive");
  double s = 0.0;
  for (const auto& m : mu.members()) {
    auto l = eigvals_desc(m.state);
    for (double& x : l) x = std::max(0.0, m.weight * x - eps);
    s += passive_energy(l, h);
  }
  return s;
}

bool wl_check(const HamiltonianSpec& h, double energy, double x, double y) {
  if (!(x > 0.0) || y < x) throw std::invalid_argument("wl_check requires 0 < x <= y");
  if (!h.ground_shifted()) throw std::invalid_argument("wl_check requires a ground-shifted Hamiltonian");
  if (energy < 0.0) throw RangeError("wl_check: negative energy");
  return x * F_H(h, energy / x) <= y * F_H(h, energy / y) + 1e-9;
}

}  // namespace qens
