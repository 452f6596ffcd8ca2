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

#include "qens/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qens {

namespace {

Eigen::SelfAdjointEigenSolver<CMatrix> eig(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
  return es;
}

double eta(double x) { return x <= 0.0 ? 0.0 : -x * std::log(x); }

// -(1-p) ln(1-p) without cancellation for small p.
double eta_complement(double p) {
  if (p >= 1.0) return 0.0;
  return -(1.0 - p) * std::log1p(-p);
}

void require_square(const CMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw DimensionError(std::string(what) + ": matrix must be square and non-empty");
}

}  // namespace

bool is_hermitian(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

CMatrix hermitian_part(const CMatrix& m) { return 0.5 * (m + m.adjoint()); }

HermitianOperator::HermitianOperator(const CMatrix& m) {
  require_square(m, "HermitianOperator");
  if (!is_hermitian(m)) throw NotHermitianError("matrix is not Hermitian within 1e-10");
  m_ = hermitian_part(m);
}

RVector HermitianOperator::eigenvalues() const { return eig(m_).eigenvalues(); }

DensityMatrix::DensityMatrix(const CMatrix& m) : HermitianOperator(m) {
  const double tr = m_.trace().real();
  if (std::abs(tr - 1.0) > kTraceTol) throw TraceError("density matrix trace differs from 1 by more than 1e-10");
  const double lmin = eig(m_).eigenvalues().minCoeff();
  if (lmin < -kPsdTol) throw NotPsdError("density matrix has a negative eigenvalue below -1e-10");
}

DensityMatrix DensityMatrix::trusted(CMatrix m) {
  return DensityMatrix(hermitian_part(m), Trusted{});
}

DensityMatrix DensityMatrix::pure(const CVector& psi) {
  PureState s(psi);
  return trusted(s.vector() * s.vector().adjoint());
}

DensityMatrix DensityMatrix::basis(int dim, int k) {
  if (k < 0 || k >= dim) throw DimensionError("basis index out of range");
  CMatrix m = CMatrix::Zero(dim, dim);
  m(k, k) = 1.0;
  return trusted(std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  if (dim <= 0) throw DimensionError("dimension must be positive");
  return trusted(CMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::diagonal(const std::vector<double>& probs) {
  if (probs.empty()) throw DimensionError("empty diagonal");
  double s = 0.0;
  for (double p : probs) {
    if (p < -kPsdTol) throw NotPsdError("negative population");
    s += p;
  }
  if (std::abs(s - 1.0) > kTraceTol) throw TraceError("populations do not sum to 1");
  const int d = static_cast<int>(probs.size());
  CMatrix m = CMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) m(i, i) = std::max(0.0, probs[i]);
  return trusted(std::move(m));
}

PureState::PureState(const CVector& v) : v_(v) {
  if (v.size() == 0) throw DimensionError("empty state vector");
  if (std::abs(v.norm() - 1.0) > kNormTol) throw NormError("state vector norm differs from 1 by more than 1e-12");
}

PureState PureState::normalized(const CVector& v) {
  const double n = v.norm();
  if (v.size() == 0 || n == 0.0) throw NormError("cannot normalise a zero vector");
  return PureState(CVector(v / n));
}

PureState PureState::basis(int dim, int k) {
  if (k < 0 || k >= dim) throw DimensionError("basis index out of range");
  CVector v = CVector::Zero(dim);
  v(k) = 1.0;
  return PureState(v);
}

DensityMatrix PureState::density() const { return DensityMatrix::trusted(v_ * v_.adjoint()); }

std::vector<double> eigvals_desc(const CMatrix& hermitian) {
  require_square(hermitian, "eigvals_desc");
  const double scale = std::max(1.0, hermitian.cwiseAbs().maxCoeff());
  if (!is_hermitian(hermitian, kHermTol * scale)) throw NotHermitianError("eigvals_desc: matrix is not Hermitian");
  RVector ev = eig(hermitian_part(hermitian)).eigenvalues();
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<double> eigvals_desc(const HermitianOperator& a) { return eigvals_desc(a.matrix()); }

double trace_norm(const CMatrix& hermitian) {
  double s = 0.0;
  for (double l : eigvals_desc(hermitian)) s += std::abs(l);
  return s;
}

double trace_norm(const HermitianOperator& a) { return trace_norm(a.matrix()); }

double mirsky_gap(const HermitianOperator& a, const HermitianOperator& b) {
  if (a.dim() != b.dim()) throw DimensionError("mirsky_gap: dimension mismatch");
  const auto la = eigvals_desc(a);
  const auto lb = eigvals_desc(b);
  double s = 0.0;
  for (std::size_t i = 0; i < la.size(); ++i) s += std::abs(la[i] - lb[i]);
  return s;
}

double entropy_from_eigenvalues(const std::vector<double>& lambda) {
  double s = 0.0;
  for (double l : lambda) s += eta(l);
  return s;
}

double von_neumann_entropy(const CMatrix& rho_psd) { return entropy_from_eigenvalues(eigvals_desc(rho_psd)); }

double von_neumann_entropy(const DensityMatrix& rho) { return von_neumann_entropy(rho.matrix()); }

double binary_entropy(double p) {
  if (p < 0.0 || p > 1.0) throw RangeError("binary_entropy: argument outside [0,1]");
  return eta(p) + eta_complement(p);
}

double g_func(double x) {
  if (x < 0.0) throw RangeError("g_func: negative argument");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return x;
  // (x+1)ln(x+1) - x ln x = ln(1+x) + x ln(1 + 1/x)
  return std::log1p(x) + x * std::log1p(1.0 / x);
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw DimensionError("relative_entropy: dimension mismatch");
  auto es = eig(sigma.matrix());
  const RVector& ls = es.eigenvalues();
  const CMatrix& U = es.eigenvectors();
  const CMatrix rho_in = U.adjoint() * rho.matrix() * U;
  double cross = 0.0;
  for (int k = 0; k < ls.size(); ++k) {
    const double w = rho_in(k, k).real();
    if (ls(k) <= kPsdTol) {
      if (w > kPsdTol) return std::numeric_limits<double>::infinity();
      continue;
    }
    cross += w * std::log(ls(k));
  }
  return -von_neumann_entropy(rho) - cross;
}

CMatrix psd_sqrt(const CMatrix& psd) {
  auto es = eig(hermitian_part(psd));
  RVector l = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * l.asDiagonal() * es.eigenvectors().adjoint();
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw DimensionError("fidelity: dimension mismatch");
  const CMatrix x = psd_sqrt(rho.matrix()) * psd_sqrt(sigma.matrix());
  Eigen::JacobiSVD<CMatrix> svd(x);
  const double s = svd.singularValues().sum();
  return std::clamp(s * s, 0.0, 1.0);
}

double bures_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  const double f = fidelity(rho, sigma);
  return std::sqrt(std::max(0.0, 2.0 - 2.0 * std::sqrt(f)));
}

CMatrix partial_trace(const CMatrix& rho, int dA, int dB, Keep keep) {
  if (dA <= 0 || dB <= 0 || rho.rows() != dA * dB || rho.cols() != dA * dB)
    throw DimensionError("partial_trace: dimension does not factor as dA*dB");
  if (keep == Keep::A) {
    CMatrix out = CMatrix::Zero(dA, dA);
    for (int a = 0; a < dA; ++a)
      for (int a2 = 0; a2 < dA; ++a2) {
        complex s = 0.0;
        for (int b = 0; b < dB; ++b) s += rho(a * dB + b, a2 * dB + b);
        out(a, a2) = s;
      }
    return out;
  }
  CMatrix out = CMatrix::Zero(dB, dB);
  for (int a = 0; a < dA; ++a) out += rho.block(a * dB, a * dB, dB, dB);
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, int dA, int dB, Keep keep) {
  return DensityMatrix::trusted(partial_trace(rho.matrix(), dA, dB, keep));
}

DensityMatrix reduced_state(const PureState& psi, int dA, int dB, Keep keep) {
  if (dA <= 0 || dB <= 0 || psi.dim() != dA * dB)
    throw DimensionError("reduced_state: dimension does not factor as dA*dB");
  // psi_{a b} laid out row-major as a dA x dB coefficient matrix.
  CMatrix c(dA, dB);
  for (int a = 0; a < dA; ++a)
    for (int b = 0; b < dB; ++b) c(a, b) = psi.vector()(a * dB + b);
  if (keep == Keep::A) return DensityMatrix::trusted(c * c.adjoint());
  return DensityMatrix::trusted((c.adjoint() * c).transpose());
}

double conditional_entropy(const DensityMatrix& rho_ab, int dA, int dB) {
  const CMatrix rb = partial_trace(rho_ab.matrix(), dA, dB, Keep::B);
  return von_neumann_entropy(rho_ab) - von_neumann_entropy(rb);
}

CMatrix positive_part(const CMatrix& hermitian) {
  require_square(hermitian, "positive_part");
  auto es = eig(hermitian_part(hermitian));
  RVector l = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * l.asDiagonal() * es.eigenvectors().adjoint();
}

CMatrix positive_part(const HermitianOperator& a) { return positive_part(a.matrix()); }

CMatrix sign_operator(const CMatrix& hermitian, double zero_tol) {
  require_square(hermitian, "sign_operator");
  auto es = eig(hermitian_part(hermitian));
  RVector l = es.eigenvalues();
  for (int i = 0; i < l.size(); ++i) l(i) = l(i) > zero_tol ? 1.0 : (l(i) < -zero_tol ? -1.0 : 0.0);
  return es.eigenvectors() * l.asDiagonal() * es.eigenvectors().adjoint();
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace qens
