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

#include "qens/ensemble.hpp"

#include <cmath>

namespace qens {

namespace {

void normalise_weights(std::vector<double>& w, const char* what) {
  double s = 0.0;
  for (double x : w) {
    if (!(x >= -kTraceTol)) throw std::invalid_argument(std::string(what) + ": negative or NaN weight");
    s += x;
  }
  if (std::abs(s - 1.0) > kTraceTol) throw TraceError(std::string(what) + ": weights do not sum to 1 within 1e-10");
  for (double& x : w) x = std::max(0.0, x) / s;
}

}  // namespace

Ensemble::Ensemble(std::vector<Member> members) : members_(std::move(members)) {
  if (members_.empty()) throw DimensionError("ensemble must have at least one member");
  dim_ = members_.front().state.dim();
  std::vector<double> w;
  for (const auto& m : members_) {
    if (m.state.dim() != dim_) throw DimensionError("ensemble members must share a dimension");
    w.push_back(m.weight);
  }
  normalise_weights(w, "Ensemble");
  for (std::size_t i = 0; i < w.size(); ++i) members_[i].weight = w[i];
}

Ensemble::Ensemble(const std::vector<double>& weights, const std::vector<DensityMatrix>& states)
    : Ensemble([&] {
        if (weights.size() != states.size()) throw DimensionError("weights and states differ in length");
        std::vector<Member> m;
        for (std::size_t i = 0; i < weights.size(); ++i) m.push_back({weights[i], states[i]});
        return m;
      }()) {}

Ensemble Ensemble::singleton(const DensityMatrix& rho) { return Ensemble(std::vector<Member>{{1.0, rho}}); }

std::vector<double> Ensemble::weights() const {
  std::vector<double> w;
  for (const auto& m : members_) w.push_back(m.weight);
  return w;
}

Ensemble Ensemble::padded(int n, const DensityMatrix& filler) const {
  if (filler.dim() != dim_) throw DimensionError("padding state has the wrong dimension");
  Ensemble out = *this;
  while (out.size() < n) out.members_.push_back({0.0, filler});
  return out;
}

Ensemble Ensemble::padded(int n) const { return padded(n, DensityMatrix::basis(dim_, 0)); }

PointMeasure::PointMeasure(std::vector<RVector> points, std::vector<double> weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
  if (points_.empty() || points_.size() != weights_.size())
    throw DimensionError("point measure needs matching non-empty points and weights");
  ambient_ = static_cast<int>(points_.front().size());
  for (const auto& p : points_)
    if (p.size() != ambient_) throw DimensionError("points must share an ambient dimension");
  normalise_weights(weights_, "PointMeasure");
}

}  // namespace qens
