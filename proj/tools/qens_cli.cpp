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

// Command-line front end: metrics between JSON ensembles, tagged bound
// evaluation, verification experiments and reproductions.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qens/bounds.hpp"
#include "qens/experiments.hpp"
#include "qens/json_io.hpp"
#include "qens/metrics.hpp"

namespace {

using qens::json;

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return json::parse(in);
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw std::runtime_error("cannot write '" + out + "'");
  f << text;
}

std::string render(const qens::ExperimentReport& rep, const std::string& format, bool timing) {
  if (format == "csv") {
    std::ostringstream os;
    qens::write_csv(os, rep, timing);
    return os.str();
  }
  return qens::experiment_to_json(rep, timing).dump(2) + "\n";
}

json metric_json(const json& in, const std::string& kind) {
  json out = json::object();
  if (in.contains("mu")) {
    const auto mu = qens::ensemble_from_json(in.at("mu"));
    const auto nu = qens::ensemble_from_json(in.at("nu"));
    auto want = [&](const char* k) { return kind == "all" || kind == k; };
    if (want("d0")) out["d0"] = qens::d0(mu, nu);
    if (want("dk")) out["dk"] = qens::d_kantorovich(mu, nu).value;
    if (want("dk-upper")) out["dk_upper"] = qens::dk_upper(mu, nu);
    if (want("dehs")) {
      const auto s = qens::d_ehs(mu, nu);
      out["dehs"] = s.value;
      out["dehs_lower"] = s.lower;
      out["dehs_converged"] = s.converged;
    }
  }
  if (in.contains("p1")) {
    const auto p1 = qens::measure_from_json(in.at("p1"));
    const auto p2 = qens::measure_from_json(in.at("p2"));
    if (kind == "all" || kind == "kr") out["kr"] = qens::kr_distance(p1, p2);
    if (kind == "all" || kind == "kr-w1") out["kr_w1"] = qens::kr_modified(p1, p2);
  }
  if (out.empty()) throw std::invalid_argument("input needs {mu, nu} ensembles or {p1, p2} point measures for kind '" + kind + "'");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qens: semicontinuity bounds for ensembles and channels"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, out, format = "json";
  std::optional<std::uint64_t> seed;
  std::optional<int> trials, workers;
  std::vector<int> dims;
  bool timing = false;
  app.add_option("--config", config_path, "JSON experiment configuration");
  app.add_option("--seed", seed, "64-bit seed");
  app.add_option("--trials", trials, "number of randomized trials");
  app.add_option("--workers", workers, "worker threads");
  app.add_option("--dims", dims, "trial dimensions")->delimiter(',');
  app.add_option("--out", out, "output file (default stdout)");
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--timing", timing, "include per-trial timing in the report");

  auto* metric = app.add_subcommand("metric", "distances between JSON ensembles or point measures");
  std::string metric_file, kind = "all";
  metric->add_option("input", metric_file, "JSON with {mu, nu} or {p1, p2}")->required();
  metric->add_option("--kind", kind, "which distance")->check(CLI::IsMember({"all", "d0", "dk", "dk-upper", "dehs", "kr", "kr-w1"}));

  auto* bound = app.add_subcommand("bound", "evaluate a tagged bound");
  std::string tag;
  std::vector<std::string> kv;
  bound->add_option("tag", tag, "bound tag")->required();
  bound->add_option("-p,--param", kv, "name=value (repeatable)");

  auto* verify = app.add_subcommand("verify", "run a verification experiment");
  std::string experiment;
  verify->add_option("experiment", experiment, "experiment name")->check(CLI::IsMember(qens::experiment_names()));

  auto* repro = app.add_subcommand("repro", "reproduce a worked example");
  std::string name;
  repro->add_option("name", name, "reproduction")->required()->check(CLI::IsMember(qens::repro_names()));

  app.add_subcommand("list", "list experiments, reproductions and bound tags");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("list")) {
      std::cout << "experiments:";
      for (const auto& n : qens::experiment_names()) std::cout << ' ' << n;
      std::cout << "\nrepro:";
      for (const auto& n : qens::repro_names()) std::cout << ' ' << n;
      std::cout << "\nbounds:";
      for (const auto& n : qens::bound_tags()) std::cout << ' ' << n;
      std::cout << '\n';
      return 0;
    }
    if (app.got_subcommand(metric)) {
      emit(metric_json(read_json(metric_file), kind).dump(2) + "\n", out);
      return 0;
    }
    if (app.got_subcommand(bound)) {
      std::map<std::string, double> params;
      for (const auto& s : kv) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("parameter '" + s + "' is not name=value");
        params[s.substr(0, eq)] = std::stod(s.substr(eq + 1));
      }
      const auto rep = qens::evaluate_bound(tag, params);
      emit(qens::report_to_json(rep).dump(2) + "\n", out);
      return rep.holds == false ? 1 : 0;
    }

    qens::ExperimentConfig cfg;
    if (!config_path.empty()) cfg = qens::config_from_json(read_json(config_path));
    if (seed) cfg.seed = *seed;
    if (trials) cfg.trials = *trials;
    if (workers) cfg.workers = *workers;
    if (!dims.empty()) cfg.dims = dims;
    if (timing) cfg.include_timing = true;
    if (out.empty()) out = cfg.output_path;
    cfg.validate();

    qens::ExperimentReport rep;
    if (app.got_subcommand(verify)) {
      if (experiment.empty()) experiment = cfg.experiment;
      if (experiment.empty()) throw std::invalid_argument("verify needs an experiment name (argument or config)");
      rep = qens::run_experiment(experiment, cfg);
    } else {
      rep = qens::run_repro(name, cfg);
    }
    emit(render(rep, format, cfg.include_timing), out);
    std::cerr << rep.experiment << ": " << rep.records.size() << " records, " << rep.violations() << " violations, "
              << rep.failed_checks() << " failed checks, max lhs/rhs " << rep.max_ratio() << '\n';
    return rep.ok() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
