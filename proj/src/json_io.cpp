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

#include "qens/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace qens {

namespace {

json real(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

complex entry_from_json(const json& e) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2) return {e[0].get<double>(), e[1].get<double>()};
  throw std::invalid_argument("matrix entry must be a number or an [re, im] pair");
}

json param_to_json(const ParamValue& v) {
  if (const double* d = std::get_if<double>(&v)) return real(*d);
  return std::get<std::string>(v);
}

std::string fmt(double x) {
  if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Quotes a CSV field when it contains a separator, quote or newline.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string params_string(const std::map<std::string, ParamValue>& params) {
  std::string s;
  for (const auto& [k, v] : params) {
    if (!s.empty()) s += ';';
    s += k + '=';
    if (const double* d = std::get_if<double>(&v))
      s += fmt(*d);
    else
      s += std::get<std::string>(v);
  }
  return s;
}

}  // namespace

json matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix must be a non-empty array of rows");
  const auto rows = static_cast<int>(j.size());
  const auto cols = static_cast<int>(j[0].size());
  CMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != cols)
      throw DimensionError("matrix rows must have equal length");
    for (int k = 0; k < cols; ++k) m(i, k) = entry_from_json(j[i][k]);
  }
  return m;
}

json ensemble_to_json(const Ensemble& mu) {
  json members = json::array();
  for (const auto& m : mu.members()) members.push_back({{"weight", m.weight}, {"state", matrix_to_json(m.state.matrix())}});
  return {{"members", members}};
}

Ensemble ensemble_from_json(const json& j) {
  std::vector<Member> members;
  for (const auto& m : j.at("members")) {
    const double w = m.at("weight").get<double>();
    if (m.contains("vector")) {
      const auto& v = m["vector"];
      CVector psi(static_cast<int>(v.size()));
      for (int i = 0; i < psi.size(); ++i) psi(i) = entry_from_json(v[i]);
      members.push_back({w, PureState(psi).density()});
    } else {
      members.push_back({w, DensityMatrix(matrix_from_json(m.at("state")))});
    }
  }
  return Ensemble(std::move(members));
}

json measure_to_json(const PointMeasure& p) {
  json pts = json::array();
  for (const auto& x : p.points()) pts.push_back(std::vector<double>(x.data(), x.data() + x.size()));
  return {{"points", pts}, {"weights", p.weights()}};
}

PointMeasure measure_from_json(const json& j) {
  std::vector<RVector> pts;
  for (const auto& x : j.at("points")) {
    const auto v = x.get<std::vector<double>>();
    pts.push_back(Eigen::Map<const RVector>(v.data(), static_cast<int>(v.size())));
  }
  return PointMeasure(std::move(pts), j.at("weights").get<std::vector<double>>());
}

json channel_to_json(const KrausChannel& phi) {
  json ops = json::array();
  for (const auto& k : phi.kraus()) ops.push_back(matrix_to_json(k));
  return {{"dim_in", phi.dim_in()}, {"dim_out", phi.dim_out()}, {"kraus", ops}};
}

KrausChannel channel_from_json(const json& j) {
  std::vector<CMatrix> ops;
  for (const auto& k : j.at("kraus")) ops.push_back(matrix_from_json(k));
  return KrausChannel(j.at("dim_in").get<int>(), j.at("dim_out").get<int>(), std::move(ops));
}

json hamiltonian_to_json(const HamiltonianSpec& h) {
  json cf = nullptr;
  if (h.closed_form() == ClosedForm::Oscillator) cf = "oscillator";
  return {{"eigenvalues", h.eigenvalues()}, {"closed_form", cf}};
}

HamiltonianSpec hamiltonian_from_json(const json& j) {
  auto e = j.at("eigenvalues").get<std::vector<double>>();
  ClosedForm cf = ClosedForm::None;
  if (j.contains("closed_form") && !j["closed_form"].is_null()) {
    if (j["closed_form"].get<std::string>() != "oscillator")
      throw std::invalid_argument("unknown closed_form '" + j["closed_form"].get<std::string>() + "'");
    cf = ClosedForm::Oscillator;
  }
  return HamiltonianSpec(std::move(e), cf);
}

json report_to_json(const BoundReport& r) {
  json params = json::object();
  for (const auto& [k, v] : r.params) params[k] = param_to_json(v);
  json out = {{"tag", r.tag}, {"epsilon", real(r.epsilon)}, {"rhs", real(r.rhs)}, {"params", params}};
  out["lhs"] = r.lhs ? real(*r.lhs) : json(nullptr);
  out["holds"] = r.holds ? json(*r.holds) : json(nullptr);
  return out;
}

json experiment_to_json(const ExperimentReport& r, bool include_timing) {
  json records = json::array();
  for (const auto& t : r.records) {
    json rec = {{"trial", t.trial}, {"report", report_to_json(t.report)}};
    if (include_timing) rec["seconds"] = t.seconds;
    if (!t.witness.empty()) rec["witness"] = json::parse(t.witness);
    records.push_back(std::move(rec));
  }
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name}, {"value", real(c.value)}, {"threshold", real(c.threshold)}, {"passed", c.passed}});
  json out = {{"experiment", r.experiment},
              {"records", records},
              {"checks", checks},
              {"summary",
               {{"records", r.records.size()},
                {"violations", r.violations()},
                {"failed_checks", r.failed_checks()},
                {"max_ratio", real(r.max_ratio())}}}};
  if (!r.table_header.empty()) out["table"] = {{"header", r.table_header}, {"rows", r.table}};
  return out;
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig cfg;
  for (const auto& [key, v] : j.items()) {
    if (key == "experiment")
      cfg.experiment = v.get<std::string>();
    else if (key == "seed")
      cfg.seed = v.get<std::uint64_t>();
    else if (key == "trials")
      cfg.trials = v.get<int>();
    else if (key == "dims")
      cfg.dims = v.get<std::vector<int>>();
    else if (key == "tolerance")
      cfg.tolerance = v.get<double>();
    else if (key == "output_path")
      cfg.output_path = v.get<std::string>();
    else if (key == "workers")
      cfg.workers = v.get<int>();
    else if (key == "include_timing")
      cfg.include_timing = v.get<bool>();
    else if (key == "extra")
      for (const auto& [k, x] : v.items()) cfg.extra[k] = x.get<double>();
    else if (v.is_number())
      cfg.extra[key] = v.get<double>();
    else
      throw std::invalid_argument("unknown config key '" + key + "'");
  }
  cfg.validate();
  return cfg;
}

void write_csv(std::ostream& os, const ExperimentReport& r, bool include_timing) {
  bool first = true;
  auto section = [&] {
    if (!first) os << '\n';
    first = false;
  };
  if (!r.table_header.empty()) {
    section();
    for (std::size_t i = 0; i < r.table_header.size(); ++i) os << (i ? "," : "") << csv_field(r.table_header[i]);
    os << '\n';
    for (const auto& row : r.table) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(row[i]);
      os << '\n';
    }
  }
  if (!r.records.empty()) {
    section();
    os << "trial,tag,epsilon,lhs,rhs,holds,params" << (include_timing ? ",seconds" : "") << '\n';
    for (const auto& t : r.records) {
      const auto& b = t.report;
      os << t.trial << ',' << csv_field(b.tag) << ',' << fmt(b.epsilon) << ',' << (b.lhs ? fmt(*b.lhs) : "") << ','
         << fmt(b.rhs) << ',' << (b.holds ? (*b.holds ? "true" : "false") : "") << ','
         << csv_field(params_string(b.params));
      if (include_timing) os << ',' << fmt(t.seconds);
      os << '\n';
    }
  }
  if (!r.checks.empty()) {
    section();
    os << "check,value,threshold,passed\n";
    for (const auto& c : r.checks)
      os << csv_field(c.name) << ',' << fmt(c.value) << ',' << fmt(c.threshold) << ',' << (c.passed ? "true" : "false")
         << '\n';
  }
}

}  // namespace qens
