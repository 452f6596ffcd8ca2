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

#include "qens/transport.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace qens {

namespace {

struct Cell {
  int i, j;
};

// Nodes 0..n-1 are rows, n..n+m-1 columns; the basis is a spanning tree.
class Tree {
 public:
  Tree(int n, int m, const std::vector<Cell>& cells) : n_(n), adj_(n + m) {
    for (int k = 0; k < static_cast<int>(cells.size()); ++k) {
      adj_[cells[k].i].push_back({n + cells[k].j, k});
      adj_[n + cells[k].j].push_back({cells[k].i, k});
    }
  }

  // Potentials with u_0 = 0 solving u_i + v_j = c_ij on the tree.
  void potentials(const Eigen::MatrixXd& c, const std::vector<Cell>& cells, std::vector<double>& u,
                  std::vector<double>& v) const {
    const int total = static_cast<int>(adj_.size());
    std::vector<double> pot(total, 0.0);
    std::vector<char> seen(total, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
      const int a = stack.back();
      stack.pop_back();
      for (auto [b, k] : adj_[a]) {
        if (seen[b]) continue;
        const double cij = c(cells[k].i, cells[k].j);
        pot[b] = cij - pot[a];
        seen[b] = 1;
        stack.push_back(b);
      }
    }
    for (int s : seen)
      if (!s) throw std::logic_error("transport basis is not a spanning tree");
    u.assign(pot.begin(), pot.begin() + n_);
    v.assign(pot.begin() + n_, pot.end());
  }

  // Basis cells on the tree path from column node of j to row node i,
  // ordered starting at row i.
  std::vector<int> path(int i, int j) const {
    const int total = static_cast<int>(adj_.size());
    std::vector<int> parent(total, -1), via(total, -1);
    std::vector<int> stack{n_ + j};
    parent[n_ + j] = n_ + j;
    while (!stack.empty()) {
      const int a = stack.back();
      stack.pop_back();
      if (a == i) break;
      for (auto [b, k] : adj_[a]) {
        if (parent[b] >= 0) continue;
        parent[b] = a;
        via[b] = k;
        stack.push_back(b);
      }
    }
    std::vector<int> out;
    for (int a = i; a != n_ + j; a = parent[a]) out.push_back(via[a]);
    return out;
  }

 private:
  int n_;
  std::vector<std::vector<std::pair<int, int>>> adj_;
};

}  // namespace

TransportResult solve_transport(const Eigen::MatrixXd& cost, const std::vector<double>& supply,
                                const std::vector<double>& demand) {
  const int n = static_cast<int>(supply.size());
  const int m = static_cast<int>(demand.size());
  if (n == 0 || m == 0 || cost.rows() != n || cost.cols() != m)
    throw std::invalid_argument("solve_transport: dimension mismatch");
  const double S = std::accumulate(supply.begin(), supply.end(), 0.0);
  const double D = std::accumulate(demand.begin(), demand.end(), 0.0);
  if (std::abs(S - D) > 1e-9 * std::max(1.0, S)) throw std::invalid_argument("solve_transport: unbalanced marginals");
  for (double s : supply)
    if (s < 0.0) throw std::invalid_argument("solve_transport: negative supply");
  for (double d : demand)
    if (d < 0.0) throw std::invalid_argument("solve_transport: negative demand");

  std::vector<double> s = supply, d = demand;
  for (double& x : d) x *= (D > 0.0 ? S / D : 0.0);
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n, m);
  std::vector<Cell> basis;
  {
    int i = 0, j = 0;
    while (true) {
      const double q = std::min(s[i], d[j]);
      x(i, j) = q;
      basis.push_back({i, j});
      s[i] -= q;
      d[j] -= q;
      if (i == n - 1 && j == m - 1) break;
      const bool row_done = s[i] <= d[j];
      if ((row_done && i < n - 1) || j == m - 1)
        ++i;
      else
        ++j;
    }
  }
  Eigen::Matrix<char, Eigen::Dynamic, Eigen::Dynamic> is_basic = Eigen::Matrix<char, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, m);
  for (const auto& c : basis) is_basic(c.i, c.j) = 1;

  const double scale = std::max(1.0, cost.cwiseAbs().maxCoeff());
  const double tol = 1e-12 * scale;
  TransportResult res;
  int streak = 0;
  std::vector<double> u, v;
  for (long it = 0;; ++it) {
    if (it > 100000) throw std::runtime_error("solve_transport: iteration limit");
    Tree tree(n, m, basis);
    tree.potentials(cost, basis, u, v);
    const bool bland = streak > 50;
    int ei = -1, ej = -1;
    double best = -tol;
    for (int i = 0; i < n && !(bland && ei >= 0); ++i)
      for (int j = 0; j < m; ++j) {
        if (is_basic(i, j)) continue;
        const double r = cost(i, j) - u[i] - v[j];
        if (r < best) {
          ei = i;
          ej = j;
          if (bland) break;
          best = r;
        }
      }
    if (ei < 0) break;
    const std::vector<int> cyc = tree.path(ei, ej);
    double theta = 0.0;
    int leave = -1;
    for (std::size_t k = 0; k < cyc.size(); k += 2) {
      const Cell& c = basis[cyc[k]];
      if (leave < 0 || x(c.i, c.j) < theta) {
        theta = x(c.i, c.j);
        leave = cyc[k];
      }
    }
    streak = theta <= 1e-15 ? streak + 1 : 0;
    for (std::size_t k = 0; k < cyc.size(); ++k) {
      const Cell& c = basis[cyc[k]];
      x(c.i, c.j) += (k % 2 == 0 ? -theta : theta);
    }
    x(ei, ej) = theta;
    const Cell out = basis[leave];
    x(out.i, out.j) = 0.0;
    is_basic(out.i, out.j) = 0;
    is_basic(ei, ej) = 1;
    basis[leave] = {ei, ej};
    res.iterations = it + 1;
  }
  x = x.cwiseMax(0.0);
  res.plan = x;
  res.value = (cost.array() * x.array()).sum();
  return res;
}

}  // namespace qens
