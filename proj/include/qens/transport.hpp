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

#ifndef QENS_TRANSPORT_HPP
#define QENS_TRANSPORT_HPP

#include <Eigen/Dense>
#include <vector>

namespace qens {

struct TransportResult {
  double value = 0.0;
  Eigen::MatrixXd plan;
  long iterations = 0;
};

// Exact balanced transportation problem
//   min sum_ij c_ij x_ij,  sum_j x_ij = supply_i,  sum_i x_ij = demand_j,  x >= 0
// by the transportation simplex (northwest-corner start, MODI potentials,
// cycle pivoting on the basis spanning tree).
TransportResult solve_transport(const Eigen::MatrixXd& cost, const std::vector<double>& supply,
                                const std::vector<double>& demand);

}  // namespace qens

#endif  // QENS_TRANSPORT_HPP
