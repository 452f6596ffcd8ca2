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

#ifndef QENS_EXPERIMENTS_HPP
#define QENS_EXPERIMENTS_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "qens/bounds.hpp"
#include "qens/random.hpp"

namespace qens {

struct ExperimentConfig {
  std::string experiment;
  std::uint64_t seed = 20260101;
  int trials = 100;
  std::vector<int> dims = {2, 3, 4, 5};
  double tolerance = kBoundTol;
  std::string output_path;
  int workers = 1;
  bool include_timing = false;
  std::map<std::string, double> extra;

  double param(const std::string& key, double fallback) const;
  void validate() const;
};

struct TrialRecord {
  int trial = 0;
  BoundReport report;
  double seconds = 0.0;
  std::string witness;  // JSON dump of the instance, set only when the report fails
};

// Per-trial hooks. A trial may install `witness` to serialise its instance; it
// is invoked only if one of the trial's reports fails.
struct TrialContext {
  std::function<std::string()> witness;
};

// Named non-bound assertion (equalities, ranges, monotonicity, coverage).
struct Check {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool passed = true;
};

struct ExperimentReport {
  std::string experiment;
  std::vector<TrialRecord> records;
  std::vector<Check> checks;
  std::vector<std::string> table_header;
  std::vector<std::vector<std::string>> table;

  int violations() const;
  int failed_checks() const;
  bool ok() const { return violations() == 0 && failed_checks() == 0; }
  double max_ratio() const;  // max lhs/rhs over records with positive rhs
  void append(const ExperimentReport& other);
};

// Runs trials 0..n-1 with rng seeded by derive_seed(seed, index); records are
// ordered by trial index independently of the worker count.
ExperimentReport run_trials(const ExperimentConfig& cfg, const std::string& name,
                            const std::function<std::vector<BoundReport>(int, Rng&, TrialContext&)>& trial);

ExperimentReport verify_scb_rank(const ExperimentConfig& cfg);
ExperimentReport verify_scb_energy(const ExperimentConfig& cfg);
ExperimentReport verify_holevo(const ExperimentConfig& cfg);
ExperimentReport verify_steering(const ExperimentConfig& cfg);
ExperimentReport verify_lemmas(const ExperimentConfig& cfg);
ExperimentReport verify_eof(const ExperimentConfig& cfg);

// Deterministic witness families and worked examples.
ExperimentReport prop2_witnesses();
ExperimentReport prop3_witnesses();
ExperimentReport erasure_sandwich();
ExperimentReport fock_holevo_example(const ExperimentConfig& cfg);
ExperimentReport eof_witness();
ExperimentReport repro_crossover(const ExperimentConfig& cfg);
ExperimentReport repro_coherent_discretization(const ExperimentConfig& cfg);
ExperimentReport repro_gibbs_displaced(const ExperimentConfig& cfg);

// Shannon entropy of Poisson(lambda), nats.
double poisson_entropy(double lambda);
// (1/N) int_0^inf H_P(s) e^{-s/N} ds by adaptive Simpson quadrature.
double coherent_average_entropy(double n, double tol);

struct DiscreteCoherent {
  std::vector<std::array<double, 2>> atoms;
  std::vector<double> weights;
};
// Gaussian measure with variance N/2 per real coordinate, binned on Delta cells.
DiscreteCoherent discretize_gaussian(double n, double delta, double half_width);

std::vector<std::string> experiment_names();
std::vector<std::string> repro_names();
ExperimentReport run_experiment(const std::string& name, const ExperimentConfig& cfg);
ExperimentReport run_repro(const std::string& name, const ExperimentConfig& cfg);

}  // namespace qens

#endif  // QENS_EXPERIMENTS_HPP
