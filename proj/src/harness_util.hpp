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

// Helpers shared by the experiment translation units; not installed.

#ifndef QENS_SRC_HARNESS_UTIL_HPP
#define QENS_SRC_HARNESS_UTIL_HPP

#include <string>
#include <utility>
#include <vector>

#include "qens/bounds.hpp"
#include "qens/channel.hpp"
#include "qens/energy.hpp"
#include "qens/ensemble.hpp"
#include "qens/experiments.hpp"
#include "qens/random.hpp"

namespace qens::detail {

double uniform(Rng& rng, double lo, double hi);
int pick(Rng& rng, int n);  // uniform on 0..n-1

// diag(0, 1, ..., d-1) as a complete finite spectrum.
HamiltonianSpec linear_spectrum(int d);

// For a complete finite spectrum F_H saturates at ln K once the energy reaches
// the uniform-state mean; clamping E to eps * max_mean keeps eps F_H(E/eps) in
// the solver's range without changing its value.
double cap_energy(double eps, double energy, const HamiltonianSpec& h);
double energy_bound(double eps, double energy, const HamiltonianSpec& h);

int numeric_rank(const CMatrix& psd, double tol = 1e-9);

// Members mixed toward random states with weight s, weights perturbed by a
// relative amount s, and (when `extra` and s > 0) one added member of weight
// about s / 5.
Ensemble perturb_ensemble(const Ensemble& mu, double s, Rng& rng, bool extra);

// Nodes and weights of n-point Gauss-Legendre quadrature on [a, b].
std::vector<std::pair<double, double>> gauss_legendre(int n, double a, double b);

Check make_check(std::string name, double value, double threshold, bool passed);

// Appends a deterministic (non-random) report under the given record index.
void add_record(ExperimentReport& rep, int trial, BoundReport r, double tol = kBoundTol);

std::string fixed(double x, int digits = 6);

}  // namespace qens::detail

#endif  // QENS_SRC_HARNESS_UTIL_HPP
