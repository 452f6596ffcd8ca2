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

#ifndef QENS_MATRIX_HPP
#define QENS_MATRIX_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qens {

using complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

// Numerical tolerances shared by the validators.
inline constexpr double kHermTol = 1e-10;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kNormTol = 1e-12;

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotHermitianError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotPsdError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct TraceError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NormError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct RangeError : std::domain_error {
  using std::domain_error::domain_error;
};

// Self-adjoint operator on C^d. The stored matrix is exactly Hermitian
// (symmetrised after the tolerance check).
class HermitianOperator {
 public:
  HermitianOperator() = default;
  explicit HermitianOperator(const CMatrix& m);

  int dim() const { return static_cast<int>(m_.rows()); }
  const CMatrix& matrix() const { return m_; }

  // Eigen-decomposition helpers; eigenvalues ascending as returned by Eigen.
  RVector eigenvalues() const;

 protected:
  struct Trusted {};
  HermitianOperator(CMatrix m, Trusted) : m_(std::move(m)) {}
  CMatrix m_;
};

// Positive semidefinite, unit trace.
class DensityMatrix : public HermitianOperator {
 public:
  DensityMatrix() = default;
  explicit DensityMatrix(const CMatrix& m);

  // Skips validation; only for results that are states by construction.
  static DensityMatrix trusted(CMatrix m);

  static DensityMatrix pure(const CVector& psi);
  static DensityMatrix basis(int dim, int k);
  static DensityMatrix maximally_mixed(int dim);
  static DensityMatrix diagonal(const std::vector<double>& probs);

 private:
  DensityMatrix(CMatrix m, Trusted t) : HermitianOperator(std::move(m), t) {}
};

// Unit vector.
class PureState {
 public:
  PureState() = default;
  explicit PureState(const CVector& v);
  static PureState normalized(const CVector& v);
  static PureState basis(int dim, int k);

  int dim() const { return static_cast<int>(v_.size()); }
  const CVector& vector() const { return v_; }
  DensityMatrix density() const;

 private:
  CVector v_;
};

// Eigenvalues in descending order (ties keep Eigen's order).
std::vector<double> eigvals_desc(const HermitianOperator& a);
std::vector<double> eigvals_desc(const CMatrix& hermitian);

// Sum of absolute eigenvalues of a Hermitian matrix.
double trace_norm(const CMatrix& hermitian);
double trace_norm(const HermitianOperator& a);

// Sum of |a_i - b_i| over descending eigenvalues; dimensions must agree.
double mirsky_gap(const HermitianOperator& a, const HermitianOperator& b);

// Natural-log entropy functions.
double entropy_from_eigenvalues(const std::vector<double>& lambda);
double von_neumann_entropy(const DensityMatrix& rho);
double von_neumann_entropy(const CMatrix& rho_psd);
double binary_entropy(double p);
double g_func(double x);

// +infinity when supp(rho) is not contained in supp(sigma).
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);
double bures_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

enum class Keep { A, B };

// Basis ordering |a> (x) |b>  <->  a * dB + b.
CMatrix partial_trace(const CMatrix& rho, int dA, int dB, Keep keep);
DensityMatrix partial_trace(const DensityMatrix& rho, int dA, int dB, Keep keep);
// Reduced state of a pure bipartite vector without forming the full projector.
DensityMatrix reduced_state(const PureState& psi, int dA, int dB, Keep keep);

// S(AB) - S(B).
double conditional_entropy(const DensityMatrix& rho_ab, int dA, int dB);

// Spectral positive part [A]_+ and sign(A).
CMatrix positive_part(const CMatrix& hermitian);
CMatrix positive_part(const HermitianOperator& a);
CMatrix sign_operator(const CMatrix& hermitian, double zero_tol = 0.0);

// Matrix functions of PSD matrices (eigenvalues clipped at 0).
CMatrix psd_sqrt(const CMatrix& psd);
CMatrix kron(const CMatrix& a, const CMatrix& b);

bool is_hermitian(const CMatrix& m, double tol = kHermTol);
CMatrix hermitian_part(const CMatrix& m);

}  // namespace qens

#endif  // QENS_MATRIX_HPP
