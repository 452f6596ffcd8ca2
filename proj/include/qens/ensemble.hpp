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

#ifndef QENS_ENSEMBLE_HPP
#define QENS_ENSEMBLE_HPP

#include <vector>

#include "qens/matrix.hpp"

namespace qens {

struct Member {
  double weight;
  DensityMatrix state;
};

// Ordered finite ensemble {p_i, rho_i}. Zero weights are allowed.
class Ensemble {
 public:
  Ensemble() = default;
  explicit Ensemble(std::vector<Member> members);
  Ensemble(const std::vector<double>& weights, const std::vector<DensityMatrix>& states);

  static Ensemble singleton(const DensityMatrix& rho);

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(members_.size()); }
  const std::vector<Member>& members() const { return members_; }
  double weight(int i) const { return members_[i].weight; }
  const DensityMatrix& state(int i) const { return members_[i].state; }
  std::vector<double> weights() const;

  // Appends zero-weight copies of `filler` until size() == n.
  Ensemble padded(int n, const DensityMatrix& filler) const;
  Ensemble padded(int n) const;

 private:
  int dim_ = 0;
  std::vector<Member> members_;
};

// Weighted point cloud in R^m.
class PointMeasure {
 public:
  PointMeasure() = default;
  PointMeasure(std::vector<RVector> points, std::vector<double> weights);

  int ambient_dim() const { return ambient_; }
  int size() const { return static_cast<int>(points_.size()); }
  const std::vector<RVector>& points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  int ambient_ = 0;
  std::vector<RVector> points_;
  std::vector<double> weights_;
};

}  // namespace qens

#endif  // QENS_ENSEMBLE_HPP
