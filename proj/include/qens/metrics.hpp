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

#ifndef QENS_METRICS_HPP
#define QENS_METRICS_HPP

#include <vector>

#include "qens/ensemble.hpp"
#include "qens/matrix.hpp"

namespace qens {

struct CouplingSolution {
  double value = 0.0;
  Eigen::MatrixXd plan;    // P_ij (or the transport plan)
  Eigen::MatrixXd plan_q;  // Q_ij, cutting-plane solver only
  long iterations = 0;
  double gap = 0.0;
  double lower = 0.0;  // certified lower bound (cutting-plane only)
  bool converged = true;
};

DensityMatrix average_state(const Ensemble& mu);

// Memberwise distance; the shorter ensemble is padded with zero weights.
double d0(const Ensemble& mu, const Ensemble& nu);

// Optimal transport with cost (1/2)||rho_i - sigma_j||_1.
CouplingSolution d_kantorovich(const Ensemble& mu, const Ensemble& nu);
Eigen::MatrixXd kantorovich_cost(const Ensemble& mu, const Ensemble& nu);

double dk_upper(const Ensemble& mu, const Ensemble& nu);

struct EhsOptions {
  double tol = 1e-9;
  int max_rounds = 200;
  int seed_angles = 8;
};

// inf over P (row sums p) and Q (column sums q) of
// (1/2) sum_ij ||P_ij rho_i - Q_ij sigma_j||_1, by sign-operator cutting planes.
// `value` is the objective at the returned plans, hence an upper bound.
CouplingSolution d_ehs(const Ensemble& mu, const Ensemble& nu, const EhsOptions& opt = {});

// The same program restricted to a fixed family of angle cuts
// X = sign(cos t rho_i - sin t sigma_j), t on a uniform grid of [0, pi/2],
// plus X = +-I. A lower bound on d_ehs that tightens as the grid refines.
double ehs_angle_grid(const Ensemble& mu, const Ensemble& nu, int angles);

// Sum_k p_k rho_k (x) |k><k| on C^dim (x) C^n.
DensityMatrix qc_state(const Ensemble& mu);
double qc_conditional_entropy(const Ensemble& mu);

struct SteeringResult {
  Ensemble mu_ordered;  // mu padded with zero-weight members aligned with nu
  Ensemble nu;
};

// An ensemble nu with average sigma and d0(mu', nu) <= sqrt(1 - F(avg(mu), sigma)).
SteeringResult steer_to_average(const Ensemble& mu, const DensityMatrix& sigma);

// Bounded-Lipschitz (Kantorovich-Rubinshtein) distance, Euclidean ground metric.
double kr_distance(const PointMeasure& p1, const PointMeasure& p2);
// Wasserstein-1 distance, Euclidean ground metric.
double kr_modified(const PointMeasure& p1, const PointMeasure& p2);

}  // namespace qens

#endif  // QENS_METRICS_HPP
