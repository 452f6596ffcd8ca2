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

// Brute-force reference implementations used only by the tests. They avoid the
// library code paths they are compared against.

#ifndef QENS_TESTS_ORACLES_HPP
#define QENS_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "qens/matrix.hpp"

namespace oracle {

// Eigenvalues of a Hermitian matrix as the roots of its characteristic
// polynomial: Faddeev-LeVerrier coefficients, then the companion matrix fed to
// the general (non-symmetric) real eigensolver.
inline std::vector<double> charpoly_eigenvalues(const qens::CMatrix& a) {
  const int n = static_cast<int>(a.rows());
  std::vector<qens::complex> c(n + 1);
  c[n] = 1.0;
  qens::CMatrix m = qens::CMatrix::Zero(n, n);
  const qens::CMatrix id = qens::CMatrix::Identity(n, n);
  for (int k = 1; k <= n; ++k) {
    m = a * m + c[n - k + 1] * id;
    c[n - k] = -(a * m).trace() / static_cast<double>(k);
  }
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -c[i].real();
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(es.eigenvalues()(i).real());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

// Trace norm as the sum of singular values (SVD, not the eigensolver).
inline double trace_norm_svd(const qens::CMatrix& a) {
  return Eigen::JacobiSVD<qens::CMatrix>(a).singularValues().sum();
}

// Minimum of a balanced transportation LP by enumerating every basis: choose
// m + n - 1 cells, solve the equality system on them, keep feasible points.
inline double transport_by_vertices(const Eigen::MatrixXd& cost, const std::vector<double>& supply,
                                    const std::vector<double>& demand) {
  const int m = static_cast<int>(supply.size()), n = static_cast<int>(demand.size());
  const int cells = m * n, basis = m + n - 1;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m + n, cells);
  Eigen::VectorXd b(m + n);
  for (int i = 0; i < m; ++i) b(i) = supply[i];
  for (int j = 0; j < n; ++j) b(m + j) = demand[j];
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      a(i, i * n + j) = 1.0;
      a(m + j, i * n + j) = 1.0;
    }
  double best = std::numeric_limits<double>::infinity();
  std::vector<bool> pick(cells, false);
  std::fill(pick.begin(), pick.begin() + basis, true);
  do {
    std::vector<int> cols;
    for (int k = 0; k < cells; ++k)
      if (pick[k]) cols.push_back(k);
    Eigen::MatrixXd sub(m + n, basis);
    for (int k = 0; k < basis; ++k) sub.col(k) = a.col(cols[k]);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(sub);
    if (lu.rank() < basis) continue;
    const Eigen::VectorXd x = lu.solve(b);
    if ((sub * x - b).cwiseAbs().maxCoeff() > 1e-10 || x.minCoeff() < -1e-12) continue;
    double v = 0.0;
    for (int k = 0; k < basis; ++k) v += x(k) * cost(cols[k] / n, cols[k] % n);
    best = std::min(best, v);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return best;
}

}  // namespace oracle

#endif  // QENS_TESTS_ORACLES_HPP
