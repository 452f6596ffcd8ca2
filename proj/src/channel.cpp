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

#include "qens/channel.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include "qens/metrics.hpp"
#include "qens/random.hpp"

namespace qens {

KrausChannel::KrausChannel(int dim_in, int dim_out, std::vector<CMatrix> kraus)
    : din_(dim_in), dout_(dim_out), ops_(std::move(kraus)) {
  if (din_ <= 0 || dout_ <= 0) throw DimensionError("channel dimensions must be positive");
  if (ops_.empty()) throw DimensionError("channel needs at least one Kraus operator");
  CMatrix s = CMatrix::Zero(din_, din_);
  for (const auto& k : ops_) {
    if (k.rows() != dout_ || k.cols() != din_) throw DimensionError("Kraus operator has the wrong shape");
    s += k.adjoint() * k;
  }
  if ((s - CMatrix::Identity(din_, din_)).cwiseAbs().maxCoeff() > 1e-9)
    throw std::invalid_argument("Kraus operators are not trace preserving within 1e-9");
  for (const auto& k : ops_) {
    Elementary e;
    int nz = 0;
    for (int c = 0; c < din_ && nz < 2; ++c)
      for (int r = 0; r < dout_ && nz < 2; ++r)
        if (k(r, c) != 0.0) {
          ++nz;
          e = {r, c, k(r, c)};
        }
    elementary_.push_back(nz == 1 ? e : Elementary{});
  }
}

CMatrix KrausChannel::operator()(const CMatrix& x) const {
  if (x.rows() != din_ || x.cols() != din_) throw DimensionError("channel input has the wrong dimension");
  CMatrix out = CMatrix::Zero(dout_, dout_);
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    const auto& e = elementary_[i];
    if (e.row >= 0)
      out(e.row, e.row) += std::norm(e.value) * x(e.col, e.col);
    else
      out.noalias() += ops_[i] * x * ops_[i].adjoint();
  }
  return out;
}

CMatrix KrausChannel::adjoint(const CMatrix& y) const {
  if (y.rows() != dout_ || y.cols() != dout_) throw DimensionError("adjoint input has the wrong dimension");
  CMatrix out = CMatrix::Zero(din_, din_);
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    const auto& e = elementary_[i];
    if (e.row >= 0)
      out(e.col, e.col) += std::norm(e.value) * y(e.row, e.row);
    else
      out.noalias() += ops_[i].adjoint() * y * ops_[i];
  }
  return out;
}

DensityMatrix apply(const KrausChannel& phi, const DensityMatrix& rho) {
  return DensityMatrix::trusted(phi(rho.matrix()));
}

Ensemble apply(const KrausChannel& phi, const Ensemble& mu) {
  std::vector<Member> out;
  for (const auto& m : mu.members()) out.push_back({m.weight, apply(phi, m.state)});
  return Ensemble(std::move(out));
}

DensityMatrix choi_matrix(const KrausChannel& phi) {
  const int din = phi.dim_in(), dout = phi.dim_out();
  CMatrix j = CMatrix::Zero(dout * din, dout * din);
  for (const auto& k : phi.kraus()) {
    CVector v = CVector::Zero(dout * din);
    for (int i = 0; i < din; ++i)
      for (int b = 0; b < dout; ++b) v(b * din + i) = k(b, i);
    j += v * v.adjoint();
  }
  return DensityMatrix::trusted(j / static_cast<double>(din));
}

int choi_rank(const KrausChannel& phi) {
  int r = 0;
  for (double l : eigvals_desc(choi_matrix(phi))) r += l > 1e-9 ? 1 : 0;
  return r;
}

double aoe(const KrausChannel& phi, const Ensemble& mu) {
  if (mu.dim() != phi.dim_in()) throw DimensionError("aoe: ensemble dimension differs from channel input");
  double s = 0.0;
  for (const auto& m : mu.members())
    if (m.weight > 0.0) s += m.weight * von_neumann_entropy(phi(m.state.matrix()));
  return s;
}

double holevo_chi(const KrausChannel& phi, const Ensemble& mu) {
  const double avg = von_neumann_entropy(phi(average_state(mu).matrix()));
  return std::max(0.0, avg - aoe(phi, mu));
}

double holevo_chi_relative(const KrausChannel& phi, const Ensemble& mu) {
  if (mu.dim() != phi.dim_in()) throw DimensionError("holevo_chi: ensemble dimension differs from channel input");
  const DensityMatrix out_avg = apply(phi, average_state(mu));
  double s = 0.0;
  for (const auto& m : mu.members())
    if (m.weight > 0.0) s += m.weight * relative_entropy(apply(phi, m.state), out_avg);
  return s;
}

double holevo_chi(const Ensemble& mu) { return holevo_chi(identity_channel(mu.dim()), mu); }

KrausChannel mix(const KrausChannel& phi, const KrausChannel& psi, double t) {
  if (t < 0.0 || t > 1.0) throw RangeError("mix: weight outside [0,1]");
  if (phi.dim_in() != psi.dim_in() || phi.dim_out() != psi.dim_out()) throw DimensionError("mix: dimension mismatch");
  std::vector<CMatrix> ops;
  if (t < 1.0)
    for (const auto& k : phi.kraus()) ops.push_back(std::sqrt(1.0 - t) * k);
  if (t > 0.0)
    for (const auto& k : psi.kraus()) ops.push_back(std::sqrt(t) * k);
  return KrausChannel(phi.dim_in(), phi.dim_out(), std::move(ops));
}

KrausChannel tensor_identity(const KrausChannel& phi, int dim_ref) {
  const CMatrix id = CMatrix::Identity(dim_ref, dim_ref);
  std::vector<CMatrix> ops;
  for (const auto& k : phi.kraus()) ops.push_back(kron(k, id));
  return KrausChannel(phi.dim_in() * dim_ref, phi.dim_out() * dim_ref, std::move(ops));
}

namespace {

// (phi - psi)(|v><v|) as a sum of rank-one terms.
CMatrix pure_difference(const KrausChannel& phi, const KrausChannel& psi, const CVector& v) {
  CMatrix out = CMatrix::Zero(phi.dim_out(), phi.dim_out());
  CVector w(phi.dim_out());
  for (const auto& k : phi.kraus()) {
    w.noalias() = k * v;
    out.noalias() += w * w.adjoint();
  }
  for (const auto& k : psi.kraus()) {
    w.noalias() = k * v;
    out.noalias() -= w * w.adjoint();
  }
  return out;
}

}  // namespace

double difference_norm_at(const KrausChannel& phi, const KrausChannel& psi, const CVector& input) {
  if (input.size() != phi.dim_in()) throw DimensionError("input vector has the wrong dimension");
  return trace_norm(pure_difference(phi, psi, input));
}

namespace {

struct Ascent {
  double value;
  CVector psi;
};

CVector top_eigenvector(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(h));
  return es.eigenvectors().col(es.eigenvalues().size() - 1);
}

// Alternating maximisation of Tr[X (phi - psi)(|v><v|)] over sign operators X
// and unit vectors v: each half-step is exact, so the objective never
// decreases. `energy` restricts v to <v|H|v> <= E when supplied.
Ascent ascend(const KrausChannel& phi, const KrausChannel& psi, CVector v, const SearchOptions& opt,
              const RVector* energy_diag = nullptr, double energy = 0.0) {
  auto constrained_top = [&](const CMatrix& a) -> CVector {
    if (!energy_diag) return top_eigenvector(a);
    const RVector& h = *energy_diag;
    auto energy_of = [&](const CVector& x) { return (x.cwiseAbs2().array() * h.array()).sum(); };
    CVector x = top_eigenvector(a);
    if (energy_of(x) <= energy) return x;
    const double scale = 2.0 * a.cwiseAbs().sum() + 1.0;
    double lo = 0.0, hi = scale * 1e6;
    CVector best = top_eigenvector(a - CMatrix(hi * h.cast<complex>().asDiagonal()));
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      CVector y = top_eigenvector(a - CMatrix(mid * h.cast<complex>().asDiagonal()));
      if (energy_of(y) <= energy) {
        hi = mid;
        best = y;
      } else {
        lo = mid;
      }
    }
    return best;
  };
  v.normalize();
  double f = difference_norm_at(phi, psi, v);
  for (int step = 0; step < opt.max_steps; ++step) {
    const CMatrix x = sign_operator(pure_difference(phi, psi, v));
    const CMatrix a = phi.adjoint(x) - psi.adjoint(x);
    CVector w = constrained_top(a);
    const double fw = difference_norm_at(phi, psi, w);
    if (fw <= f + opt.tol) {
      if (fw > f) {
        f = fw;
        v = w;
      }
      break;
    }
    f = fw;
    v = w;
  }
  return {f, v};
}

std::vector<Ascent> multistart(const KrausChannel& phi, const KrausChannel& psi, const SearchOptions& opt,
                               const RVector* energy_diag, double energy) {
  std::vector<Ascent> results(opt.restarts, Ascent{-1.0, CVector()});
  auto job = [&](int r) {
    Rng rng(derive_seed(opt.seed, static_cast<std::uint64_t>(r)));
    CVector start = random_pure(phi.dim_in(), rng).vector();
    if (energy_diag) {
      // Feasible start: blend towards the ground level until the energy fits.
      CVector ground = CVector::Zero(phi.dim_in());
      for (int k = 0; k < phi.dim_in(); ++k)
        if ((*energy_diag)(k) == energy_diag->minCoeff()) ground(k) = 1.0;
      ground.normalize();
      double t = 1.0;
      CVector x = start;
      for (int it = 0; it < 60; ++it) {
        x = (t * start + (1.0 - t) * ground).normalized();
        if ((x.cwiseAbs2().array() * energy_diag->array()).sum() <= energy) break;
        t *= 0.7;
      }
      start = x;
    }
    results[r] = ascend(phi, psi, start, opt, energy_diag, energy);
  };
  const int workers = std::max(1, std::min(opt.workers, opt.restarts));
  if (workers == 1) {
    for (int r = 0; r < opt.restarts; ++r) job(r);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (int r = w; r < opt.restarts; r += workers) job(r);
      });
    for (auto& t : pool) t.join();
  }
  return results;
}

NormEstimate best_of(const std::vector<Ascent>& results, NormKind kind, int dim_ref) {
  NormEstimate est;
  est.kind = kind;
  est.dim_ref = dim_ref;
  est.value = -1.0;
  for (const auto& r : results)
    if (r.value > est.value) {
      est.value = r.value;
      est.witness = r.psi;
    }
  est.value = std::max(0.0, est.value);
  return est;
}

void require_comparable(const KrausChannel& phi, const KrausChannel& psi) {
  if (phi.dim_in() != psi.dim_in() || phi.dim_out() != psi.dim_out())
    throw DimensionError("channel pair has mismatched dimensions");
}

}  // namespace

NormEstimate norm_1to1_lower(const KrausChannel& phi, const KrausChannel& psi, const SearchOptions& opt) {
  require_comparable(phi, psi);
  return best_of(multistart(phi, psi, opt, nullptr, 0.0), NormKind::OneToOneLower, 1);
}

NormEstimate diamond_lower(const KrausChannel& phi, const KrausChannel& psi, const SearchOptions& opt) {
  require_comparable(phi, psi);
  const int dr = phi.dim_in();
  const KrausChannel a = tensor_identity(phi, dr), b = tensor_identity(psi, dr);
  auto results = multistart(a, b, opt, nullptr, 0.0);
  // A product input |w>|0> reproduces the unstabilised witness, so the
  // stabilised estimate can never fall below it.
  const NormEstimate single = norm_1to1_lower(phi, psi, opt);
  CVector lifted = CVector::Zero(dr * dr);
  for (int i = 0; i < dr; ++i) lifted(i * dr) = single.witness(i);
  results.push_back(ascend(a, b, lifted, opt));
  return best_of(results, NormKind::DiamondLower, dr);
}

NormEstimate ec_diamond_lower(const KrausChannel& phi, const KrausChannel& psi, const HamiltonianSpec& h,
                              double energy, const SearchOptions& opt) {
  require_comparable(phi, psi);
  const int dr = phi.dim_in();
  if (h.levels() < dr && !h.extendable()) throw DimensionError("Hamiltonian has fewer levels than the input");
  const HamiltonianSpec hh = h.levels() >= dr ? h : h.extended(dr);
  if (energy < hh.ground()) throw RangeError("energy below the ground level");
  RVector diag(dr * dr);
  for (int a = 0; a < dr; ++a)
    for (int r = 0; r < dr; ++r) diag(a * dr + r) = hh.eigenvalues()[a];
  return best_of(multistart(tensor_identity(phi, dr), tensor_identity(psi, dr), opt, &diag, energy),
                 NormKind::EnergyConstrainedLower, dr);
}

KrausChannel identity_channel(int d) {
  if (d <= 0) throw DimensionError("identity channel needs a positive dimension");
  return KrausChannel(d, d, {CMatrix::Identity(d, d)});
}

KrausChannel erasure(int d, double p) {
  if (d <= 0) throw DimensionError("erasure needs a positive dimension");
  if (!(p >= 0.0 && p <= 1.0)) throw RangeError("erasure probability outside [0,1]");
  std::vector<CMatrix> ops;
  if (p < 1.0) {
    CMatrix v = CMatrix::Zero(d + 1, d);
    v.topRows(d).setIdentity();
    ops.push_back(std::sqrt(1.0 - p) * v);
  }
  if (p > 0.0)
    for (int i = 0; i < d; ++i) {
      CMatrix k = CMatrix::Zero(d + 1, d);
      k(d, i) = std::sqrt(p);
      ops.push_back(k);
    }
  return KrausChannel(d, d + 1, std::move(ops));
}

KrausChannel mix_with_state(int d, double eps, const DensityMatrix& omega) {
  if (omega.dim() != d) throw DimensionError("mix_with_state: state has the wrong dimension");
  if (!(eps >= 0.0 && eps <= 1.0)) throw RangeError("mix_with_state: eps outside [0,1]");
  std::vector<CMatrix> ops;
  if (eps < 1.0) ops.push_back(std::sqrt(1.0 - eps) * CMatrix::Identity(d, d));
  if (eps > 0.0) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(omega.matrix());
    for (int k = 0; k < d; ++k) {
      const double l = es.eigenvalues()(k);
      if (l <= 1e-15) continue;
      for (int i = 0; i < d; ++i) {
        CMatrix op = CMatrix::Zero(d, d);
        op.col(i) = std::sqrt(eps * l) * es.eigenvectors().col(k);
        ops.push_back(op);
      }
    }
  }
  return KrausChannel(d, d, std::move(ops));
}

KrausChannel fock_dephasing(int n_max) {
  if (n_max < 1 || n_max > kMaxFockLevel) throw RangeError("fock_dephasing: N_max must lie in [1, 512]");
  const int d = n_max + 1;
  std::vector<CMatrix> ops;
  for (int n = 0; n < d; ++n) {
    CMatrix k = CMatrix::Zero(d, d);
    k(n, n) = 1.0;
    ops.push_back(k);
  }
  return KrausChannel(d, d, std::move(ops));
}

PureState coherent_state(complex zeta, int n_max) {
  if (n_max < 1 || n_max > kMaxFockLevel) throw RangeError("coherent_state: N_max must lie in [1, 512]");
  const double s = std::norm(zeta);
  if (s > n_max / 4.0) throw RangeError("coherent_state: |zeta|^2 exceeds the truncation budget N_max/4");
  CVector v = CVector::Zero(n_max + 1);
  v(0) = std::exp(-s / 2.0);
  if (s > 0.0) {
    const double r = std::sqrt(s), phase = std::arg(zeta);
    for (int n = 1; n <= n_max; ++n) {
      const double logamp = -s / 2.0 + n * std::log(r) - 0.5 * std::lgamma(n + 1.0);
      v(n) = std::polar(std::exp(logamp), n * phase);
    }
  }
  const double tail = 1.0 - v.squaredNorm();
  if (tail > 1e-10) throw RangeError("coherent_state: truncated norm below 1 - 1e-10");
  return PureState::normalized(v);
}

complex coherent_overlap(complex z1, complex z2) {
  return std::exp(-(std::norm(z1) + std::norm(z2)) / 2.0 + std::conj(z1) * z2);
}

CMatrix displacement_operator(complex zeta, int n_max) {
  if (n_max < 1 || n_max > kMaxFockLevel) throw RangeError("displacement_operator: N_max must lie in [1, 512]");
  const int m = n_max + 1 + 60;
  // i (zeta a^dagger - conj(zeta) a) is Hermitian.
  CMatrix h = CMatrix::Zero(m, m);
  const complex I(0.0, 1.0);
  for (int n = 0; n + 1 < m; ++n) {
    const double s = std::sqrt(n + 1.0);
    h(n + 1, n) = I * zeta * s;
    h(n, n + 1) = -I * std::conj(zeta) * s;
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  CVector ph(m);
  for (int k = 0; k < m; ++k) ph(k) = std::exp(-I * es.eigenvalues()(k));
  const CMatrix d = es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
  return d.topLeftCorner(n_max + 1, n_max + 1);
}

DensityMatrix displaced_thermal_state(complex zeta, double n0, int n_max) {
  if (!(n0 >= 0.0)) throw RangeError("displaced_thermal_state: N0 must be >= 0");
  const int m = n_max + 1 + 60;
  if (m - 1 > kMaxFockLevel) throw RangeError("displaced_thermal_state: N_max too large");
  const CMatrix full_d = displacement_operator(zeta, m - 1);
  CMatrix gamma = CMatrix::Zero(m, m);
  const double q = n0 / (n0 + 1.0);
  for (int n = 0; n < m; ++n) gamma(n, n) = std::pow(q, n) / (n0 + 1.0);
  const CMatrix rho = (full_d * gamma * full_d.adjoint()).topLeftCorner(n_max + 1, n_max + 1);
  return DensityMatrix::trusted(rho / rho.trace().real());
}

}  // namespace qens
