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

#ifndef QENS_BOUNDS_HPP
#define QENS_BOUNDS_HPP

#include <map>
#include <optional>
#include <string>
#include <variant>

#include "qens/energy.hpp"

namespace qens {

using ParamValue = std::variant<double, std::string>;

struct BoundReport {
  std::string tag;
  std::optional<double> lhs;
  double rhs = 0.0;
  double epsilon = 0.0;
  std::map<std::string, ParamValue> params;
  std::optional<bool> holds;

  double slack() const { return lhs ? rhs - *lhs : rhs; }
};

inline constexpr double kBoundTol = 1e-8;

// Builds a report; holds = (lhs <= rhs + 1e-8) when lhs is given.
BoundReport make_report(std::string tag, double epsilon, double rhs, std::optional<double> lhs = std::nullopt,
                        std::map<std::string, ParamValue> params = {});

// eps ln(r-1) + h2(eps) for eps <= 1 - 1/r, ln r beyond.
double scb_rank(double eps, int r);
// eps F_H(E/eps) + g(eps); zero at eps = 0.
double scb_energy(double eps, double energy, const HamiltonianSpec& h);

struct RankCase {
  int r;
};
struct EnergyCase {
  double energy;
  HamiltonianSpec h;
};
using HolevoCase = std::variant<RankCase, EnergyCase>;

double scb_holevo(double eps, const HolevoCase& a, const HolevoCase& b);
double cb_holevo_rank(double eps, int r_mu, int r_nu);
double cb_holevo_energy(double eps, double e_mu, const HamiltonianSpec& h_mu, double e_nu, const HamiltonianSpec& h_nu);

double chi_cb_prior_dim(double eps, int d);

struct PriorEnergyBound {
  double value;
  double t_opt;
  bool boundary;  // minimiser at the right end of (0, 1/(2 eps)]
};
PriorEnergyBound chi_cb_prior_energy(double eps, double energy, const HamiltonianSpec& h, int grid = 1000);

double crossover_u(double eps);
double crossover_v(int d);
std::optional<double> crossover_eps(int d);

double ae_upper_rank(double delta, int r);
double ae_upper_energy(double delta, double e_psv, const HamiltonianSpec& h);
double aoe_upper(int r, double delta_r, double e_psv, const HamiltonianSpec& h);

double eof_scb(double eps, int r);
double eof_scb_fid(double fid, int r);
double eof_upper_sep(double delta_f, int r);

struct DiscretizationBounds {
  double loss;
  double gain;
};
DiscretizationBounds discretization_bounds(double delta, double n);

bool s_ineq_check(double eps, double n);

// Evaluates a bound addressed by tag with named numeric parameters.
BoundReport evaluate_bound(const std::string& tag, const std::map<std::string, double>& params);
std::vector<std::string> bound_tags();

}  // namespace qens

#endif  // QENS_BOUNDS_HPP
