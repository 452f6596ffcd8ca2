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

#ifndef QENS_JSON_IO_HPP
#define QENS_JSON_IO_HPP

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "qens/channel.hpp"
#include "qens/energy.hpp"
#include "qens/ensemble.hpp"
#include "qens/experiments.hpp"

namespace qens {

using json = nlohmann::json;

// Complex matrices are nested arrays of [re, im] pairs, row-major. A plain real
// number is accepted for an entry with zero imaginary part.
json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const json& j);

// {"members": [{"weight": w, "state": matrix}]}; a member may give "vector"
// (a pure state as [re, im] pairs) instead of "state".
json ensemble_to_json(const Ensemble& mu);
Ensemble ensemble_from_json(const json& j);

// {"points": [[x, y, ...], ...], "weights": [...]}
json measure_to_json(const PointMeasure& p);
PointMeasure measure_from_json(const json& j);

// {"dim_in": n, "dim_out": m, "kraus": [matrix, ...]}
json channel_to_json(const KrausChannel& phi);
KrausChannel channel_from_json(const json& j);

// {"eigenvalues": [...], "closed_form": "oscillator" | null}
json hamiltonian_to_json(const HamiltonianSpec& h);
HamiltonianSpec hamiltonian_from_json(const json& j);

json report_to_json(const BoundReport& r);

// Timing is written only when include_timing is set, so that reports for a
// fixed configuration are byte-identical across runs and worker counts.
json experiment_to_json(const ExperimentReport& r, bool include_timing = false);

ExperimentConfig config_from_json(const json& j);

// Sections (records, checks, table) separated by blank lines, each with its
// own header row. Reals are printed with 17 significant digits.
void write_csv(std::ostream& os, const ExperimentReport& r, bool include_timing = false);

}  // namespace qens

#endif  // QENS_JSON_IO_HPP
