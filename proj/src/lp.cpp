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

#include "qens/lp.hpp"

#include <cmath>
#include <stdexcept>

namespace qens::lp {

namespace {
constexpr double kPivotTol = 1e-10;
constexpr double kOptTol = 1e-11;
constexpr double kFeasTol = 1e-9;
constexpr int kDegenerateStreak = 50;
}  // namespace

Simplex::Simplex(std::vector<Sense> senses, std::vector<double> rhs)
    : m_(static_cast<int>(senses.size())), sense_(std::move(senses)) {
  if (rhs.size() != sense_.size()) throw std::invalid_argument("Simplex: senses and rhs differ in length");
  b_.resize(m_);
  sign_.resize(m_);
  t_.resize(m_, 0);
  basis_.assign(m_, -1);
  init_col_.assign(m_, -1);
  for (int i = 0; i < m_; ++i) {
    sign_[i] = rhs[i] < 0.0 ? -1.0 : 1.0;
    b_(i) = sign_[i] * rhs[i];
    if (sign_[i] < 0.0) {
      if (sense_[i] == Sense::LessEqual)
        sense_[i] = Sense::GreaterEqual;
      else if (sense_[i] == Sense::GreaterEqual)
        sense_[i] = Sense::LessEqual;
    }
  }
  bool need_phase1 = false;
  for (int i = 0; i < m_; ++i) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(m_);
    e(i) = 1.0;
    if (sense_[i] == Sense::LessEqual) {
      init_col_[i] = append_raw(Kind::Slack, 0.0, e);
    } else {
      if (sense_[i] == Sense::GreaterEqual) append_raw(Kind::Surplus, 0.0, -e);
      init_col_[i] = append_raw(Kind::Artificial, 0.0, e);
      need_phase1 = true;
    }
    basis_[i] = init_col_[i];
  }
  feasible_ = !need_phase1;
}

int Simplex::append_raw(Kind kind, double cost, const Eigen::VectorXd& col) {
  if (ncols_ == t_.cols()) t_.conservativeResize(m_, std::max<Eigen::Index>(16, 2 * t_.cols()));
  t_.col(ncols_) = col;
  kind_.push_back(kind);
  cost_.push_back(cost);
  return ncols_++;
}

Eigen::VectorXd Simplex::binv_times(const Eigen::VectorXd& v) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(m_);
  for (int i = 0; i < m_; ++i)
    if (v(i) != 0.0) out += v(i) * t_.col(init_col_[i]);
  return out;
}

int Simplex::add_column(double cost, const Column& column) {
  Eigen::VectorXd a = Eigen::VectorXd::Zero(m_);
  for (const auto& [r, v] : column) {
    if (r < 0 || r >= m_) throw std::out_of_range("Simplex: column row index out of range");
    a(r) += sign_[r] * v;
  }
  const int j = append_raw(Kind::Structural, cost, binv_times(a));
  structural_.push_back(j);
  return static_cast<int>(structural_.size()) - 1;
}

void Simplex::pivot(int r, int j) {
  const double piv = t_(r, j);
  t_.row(r).head(ncols_) /= piv;
  b_(r) /= piv;
  for (int i = 0; i < m_; ++i) {
    if (i == r) continue;
    const double f = t_(i, j);
    if (f == 0.0) continue;
    t_.row(i).head(ncols_) -= f * t_.row(r).head(ncols_);
    b_(i) -= f * b_(r);
    if (b_(i) < 0.0 && b_(i) > -kFeasTol) b_(i) = 0.0;
  }
  basis_[r] = j;
  ++iterations_;
}

Status Simplex::run(const std::vector<double>& cost, bool allow_artificial) {
  // Reduced costs z_j = c_j - c_B^T T_j.
  Eigen::RowVectorXd cb(m_);
  for (int i = 0; i < m_; ++i) cb(i) = cost[basis_[i]];
  Eigen::RowVectorXd z(ncols_);
  for (int j = 0; j < ncols_; ++j) z(j) = cost[j];
  z.noalias() -= cb * t_.leftCols(ncols_);

  int streak = 0;
  while (true) {
    if (iterations_ >= max_iterations) return Status::IterationLimit;
    const bool bland = streak > kDegenerateStreak;
    int enter = -1;
    double best = -kOptTol;
    for (int j = 0; j < ncols_; ++j) {
      if (!allow_artificial && kind_[j] == Kind::Artificial) continue;
      if (z(j) < best) {
        enter = j;
        if (bland) break;
        best = z(j);
      }
    }
    if (enter < 0) return Status::Optimal;
    int leave = -1;
    double theta = 0.0;
    for (int i = 0; i < m_; ++i) {
      const double a = t_(i, enter);
      if (a <= kPivotTol) continue;
      const double ratio = b_(i) / a;
      if (leave < 0 || ratio < theta - 1e-14 ||
          (std::abs(ratio - theta) <= 1e-14 && basis_[i] < basis_[leave])) {
        leave = i;
        theta = ratio;
      }
    }
    if (leave < 0) return Status::Unbounded;
    streak = theta <= 1e-14 ? streak + 1 : 0;
    const double zj = z(enter);
    pivot(leave, enter);
    z -= zj * t_.row(leave).head(ncols_);
    z(enter) = 0.0;
  }
}

Status Simplex::solve() {
  if (infeasible_) return Status::Infeasible;
  if (!feasible_) {
    std::vector<double> c1(ncols_, 0.0);
    for (int j = 0; j < ncols_; ++j)
      if (kind_[j] == Kind::Artificial) c1[j] = 1.0;
    const Status s = run(c1, true);
    if (s != Status::Optimal) return s;
    double infeas = 0.0;
    for (int i = 0; i < m_; ++i)
      if (kind_[basis_[i]] == Kind::Artificial) infeas += b_(i);
    if (infeas > kFeasTol) {
      infeasible_ = true;
      return Status::Infeasible;
    }
    // Drive remaining zero-level artificials out of the basis where possible.
    for (int i = 0; i < m_; ++i) {
      if (kind_[basis_[i]] != Kind::Artificial) continue;
      for (int j = 0; j < ncols_; ++j) {
        if (kind_[j] != Kind::Artificial && std::abs(t_(i, j)) > 1e-9) {
          pivot(i, j);
          break;
        }
      }
    }
    feasible_ = true;
  }
  return run(cost_, false);
}

double Simplex::objective() const {
  double s = 0.0;
  for (int i = 0; i < m_; ++i) s += cost_[basis_[i]] * b_(i);
  return s;
}

std::vector<double> Simplex::primal() const {
  std::vector<double> pos(ncols_, 0.0);
  for (int i = 0; i < m_; ++i) pos[basis_[i]] = b_(i);
  std::vector<double> x(structural_.size());
  for (std::size_t k = 0; k < structural_.size(); ++k) x[k] = pos[structural_[k]];
  return x;
}

std::vector<double> Simplex::duals() const {
  std::vector<double> y(m_);
  for (int i = 0; i < m_; ++i) {
    double s = 0.0;
    for (int r = 0; r < m_; ++r) s += cost_[basis_[r]] * t_(r, init_col_[i]);
    y[i] = sign_[i] * s;
  }
  return y;
}

}  // namespace qens::lp
