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

#ifndef QENS_LP_HPP
#define QENS_LP_HPP

#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace qens::lp {

enum class Sense { LessEqual, Equal, GreaterEqual };
enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };

using Column = std::vector<std::pair<int, double>>;  // (row, coefficient)

// Dense two-phase tableau simplex for  min c^T x  s.t.  A x (sense) b,  x >= 0.
//
// Rows are fixed at construction; columns may be appended at any time, and a
// later solve() continues from the current basis, which keeps column
// generation cheap.
class Simplex {
 public:
  Simplex(std::vector<Sense> senses, std::vector<double> rhs);

  int add_column(double cost, const Column& column);

  Status solve();

  int rows() const { return m_; }
  int columns() const { return static_cast<int>(structural_.size()); }
  double objective() const;
  std::vector<double> primal() const;
  // Row duals y with reduced costs c_j - y^T a_j >= 0 at optimality.
  std::vector<double> duals() const;
  long iterations() const { return iterations_; }

  long max_iterations = 200000;

 private:
  enum class Kind { Structural, Slack, Surplus, Artificial };
  using Tableau = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  int append_raw(Kind kind, double cost, const Eigen::VectorXd& flipped_column);
  Status run(const std::vector<double>& cost, bool allow_artificial);
  void pivot(int r, int j);
  Eigen::VectorXd binv_times(const Eigen::VectorXd& v) const;

  int m_;
  std::vector<double> sign_;
  std::vector<Sense> sense_;
  Eigen::VectorXd b_;
  Tableau t_;
  int ncols_ = 0;
  std::vector<Kind> kind_;
  std::vector<double> cost_;
  std::vector<int> structural_;  // column index of each structural variable
  std::vector<int> basis_;
  std::vector<int> init_col_;
  bool feasible_ = false;
  bool infeasible_ = false;
  long iterations_ = 0;
};

}  // namespace qens::lp

#endif  // QENS_LP_HPP
