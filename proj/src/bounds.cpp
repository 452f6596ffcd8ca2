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

#include "qens/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace qens {

namespace {

void require_eps(double eps, const char* what) {
  if (!(eps >= 0.0) || !std::isfinite(eps)) throw RangeError(std::string(what) + ": closeness parameter must be >= 0");
}

void require_unit(double eps, const char* what) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw RangeError(std::string(what) + ": closeness parameter must lie in [0,1]");
}

void require_rank(int r, const char* what) {
  if (r < 2) throw RangeError(std::string(what) + ": rank/dimension must be >= 2");
}

double rank_term(double eps, int r) {
  return eps * std::log(static_cast<double>(r - 1)) + binary_entropy(std::min(eps, 1.0));
}

double case_term(double eps, const HolevoCase& c) {
  if (const auto* rc = std::get_if<RankCase>(&c)) {
    require_rank(rc->r, "scb_holevo");
    return scb_rank(eps, rc->r);
  }
  const auto& ec = std::get<EnergyCase>(c);
  return scb_energy(eps, ec.energy, ec.h);
}

}  // namespace

BoundReport make_report(std::string tag, double epsilon, double rhs, std::optional<double> lhs,
                        std::map<std::string, ParamValue> params) {
  if (!std::isfinite(rhs)) throw RangeError("bound report: rhs must be finite");
  BoundReport r;
  r.tag = std::move(tag);
  r.epsilon = epsilon;
  r.rhs = rhs;
  r.lhs = lhs;
  r.params = std::move(params);
  if (lhs) r.holds = *lhs <= rhs + kBoundTol;
  return r;
}

double scb_rank(double eps, int r) {
  require_eps(eps, "scb_rank");
  require_rank(r, "scb_rank");
  if (eps <= 1.0 - 1.0 / r) return rank_term(eps, r);
  return std::log(static_cast<double>(r));
}

double scb_energy(double eps, double energy, const HamiltonianSpec& h) {
  require_eps(eps, "scb_energy");
  if (energy < 0.0) throw RangeError("scb_energy: energy must be >= 0");
  if (eps == 0.0) return 0.0;
  return eps * F_H(h, energy / eps) + g_func(eps);
}

double scb_holevo(double eps, const HolevoCase& a, const HolevoCase& b) {
  require_unit(eps, "scb_holevo");
  return case_term(eps, a) + case_term(eps, b);
}

double cb_holevo_rank(double eps, int r_mu, int r_nu) {
  require_unit(eps, "cb_holevo_rank");
  return scb_holevo(eps, RankCase{r_mu}, RankCase{r_nu});
}

double cb_holevo_energy(double eps, double e_mu, const HamiltonianSpec& h_mu, double e_nu, const HamiltonianSpec& h_nu) {
  require_unit(eps, "cb_holevo_energy");
  if (eps == 0.0) return 0.0;
  return eps * F_H(h_mu, e_mu / eps) + eps * F_H(h_nu, e_nu / eps) + 2.0 * g_func(eps);
}

double chi_cb_prior_dim(double eps, int d) {
  require_unit(eps, "chi_cb_prior_dim");
  require_rank(d, "chi_cb_prior_dim");
  return eps * std::log(static_cast<double>(d)) + 2.0 * g_func(eps);
}

PriorEnergyBound chi_cb_prior_energy(double eps, double energy, const HamiltonianSpec& h, int grid) {
  if (!(eps > 0.0 && eps <= 1.0)) throw RangeError("chi_cb_prior_energy: eps must lie in (0,1]");
  if (energy < 0.0) throw RangeError("chi_cb_prior_energy: energy must be >= 0");
  const double tmax = 1.0 / (2.0 * eps);
  const double tmin = tmax * 1e-8;
  auto objective = [&](double t) {
    const double et = std::min(eps * t, 0.5);
    const double r = (1.0 + t / 2.0) / (1.0 - et);
    try {
      return eps * (2.0 * t + r) * F_H(h, energy / (eps * t)) + 2.0 * g_func(eps * r) + 2.0 * binary_entropy(et);
    } catch (const RangeError&) {
      return std::numeric_limits<double>::infinity();
    }
  };
  const double lmin = std::log(tmin), lmax = std::log(tmax);
  int best = -1;
  double fbest = std::numeric_limits<double>::infinity();
  std::vector<double> ls(grid);
  for (int k = 0; k < grid; ++k) {
    ls[k] = lmin + (lmax - lmin) * k / (grid - 1);
    const double f = objective(std::exp(ls[k]));
    if (f < fbest) {
      fbest = f;
      best = k;
    }
  }
  if (best < 0) throw RangeError("chi_cb_prior_energy: objective infinite on the whole t-interval");
  // Golden-section refinement in log t between the neighbouring grid points.
  double a = ls[std::max(0, best - 1)], b = ls[std::min(grid - 1, best + 1)];
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a), d = a + invphi * (b - a);
  double fc = objective(std::exp(c)), fd = objective(std::exp(d));
  for (int it = 0; it < 100 && b - a > 1e-12; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = objective(std::exp(c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = objective(std::exp(d));
    }
  }
  PriorEnergyBound out{fbest, std::exp(ls[best]), best == grid - 1};
  const double lm = 0.5 * (a + b);
  const double fm = objective(std::exp(lm));
  if (fm < out.value) {
    out.value = fm;
    out.t_opt = std::exp(lm);
    out.boundary = false;
  }
  return out;
}

double crossover_u(double eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw RangeError("crossover_u: eps must lie in [0,1]");
  if (eps == 0.0) return 1.0;
  return std::pow(1.0 - eps, 2.0 / eps - 2.0) * std::pow(1.0 + eps, 2.0 / eps + 2.0);
}

double crossover_v(int d) {
  if (d < 2) throw RangeError("crossover_v: d must be >= 2");
  const double x = 1.0 - 1.0 / d;
  return d * x * x;
}

std::optional<double> crossover_eps(int d) {
  if (d < 2) throw RangeError("crossover_eps: d must be >= 2");
  const double v = crossover_v(d);
  if (d == 2) return 0.0;
  if (v >= crossover_u(1.0)) return std::nullopt;
  double lo = 0.0, hi = 1.0;
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    if (crossover_u(mid) < v)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double ae_upper_rank(double delta, int r) {
  require_eps(delta, "ae_upper");
  require_rank(r, "ae_upper");
  if (delta > 1.0 - 1.0 / r) throw RangeError("ae_upper: rank case requires delta <= 1 - 1/r");
  return rank_term(delta, r);
}

double ae_upper_energy(double delta, double e_psv, const HamiltonianSpec& h) {
  return scb_energy(delta, e_psv, h);
}

double aoe_upper(int r, double delta_r, double e_psv, const HamiltonianSpec& h) {
  if (r < 1) throw RangeError("aoe_upper: r must be >= 1");
  return std::log(static_cast<double>(r)) + scb_energy(delta_r, e_psv, h);
}

double eof_scb(double eps, int r) {
  require_rank(r, "eof_scb");
  require_unit(eps, "eof_scb");
  if (eps > 1.0 - std::sqrt(2.0 * r - 1.0) / r) throw RangeError("eof_scb: eps exceeds 1 - sqrt(2r-1)/r");
  const double delta = std::min(std::sqrt(eps * (2.0 - eps)), 1.0 - 1.0 / r);
  return rank_term(delta, r);
}

double eof_scb_fid(double fid, int r) {
  require_rank(r, "eof_scb_fid");
  if (!(fid >= 0.0 && fid <= 1.0)) throw RangeError("eof_scb_fid: fidelity must lie in [0,1]");
  const double delta = std::sqrt(1.0 - fid);
  if (delta > 1.0 - 1.0 / r) throw RangeError("eof_scb_fid: sqrt(1-F) exceeds 1 - 1/r");
  return rank_term(delta, r);
}

double eof_upper_sep(double delta_f, int r) {
  require_rank(r, "eof_upper_sep");
  require_eps(delta_f, "eof_upper_sep");
  if (delta_f > 1.0 - 1.0 / r) throw RangeError("eof_upper_sep: Delta exceeds 1 - 1/r");
  return rank_term(delta_f, r);
}

DiscretizationBounds discretization_bounds(double delta, double n) {
  if (!(delta > 0.0) || !(n > 0.0)) throw RangeError("discretization_bounds: Delta and N must be positive");
  const double h = delta / std::numbers::sqrt2;
  const double base = std::numbers::sqrt2 * n / delta;
  return {h * g_func(base) + g_func(h), h * g_func(base + h + std::sqrt(std::numbers::pi * n)) + g_func(h)};
}

bool s_ineq_check(double eps, double n) {
  if (!(eps > 0.0 && eps <= 1.0) || !(n > 0.0)) throw RangeError("s_ineq_check: need eps in (0,1], N > 0");
  const double a = eps * g_func(n / eps) - eps * g_func(n);
  const double b = -eps * std::log(eps) + eps * (1.0 + eps / n);
  const double c = 1.0 / std::numbers::e + 1.0 + 1.0 / n;
  return a <= b + 1e-9 && b <= c + 1e-9;
}

namespace {

double need(const std::map<std::string, double>& p, const std::string& key) {
  auto it = p.find(key);
  if (it == p.end()) throw std::invalid_argument("missing parameter '" + key + "'");
  return it->second;
}

double opt(const std::map<std::string, double>& p, const std::string& key, double fallback) {
  auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

int need_int(const std::map<std::string, double>& p, const std::string& key) {
  const double v = need(p, key);
  if (v != std::floor(v)) throw std::invalid_argument("parameter '" + key + "' must be an integer");
  return static_cast<int>(v);
}

HolevoCase holevo_case(const std::map<std::string, double>& p, const std::string& side, const HamiltonianSpec& h) {
  if (p.count("r_" + side)) return RankCase{need_int(p, "r_" + side)};
  if (p.count("E_" + side)) return EnergyCase{need(p, "E_" + side), h};
  throw std::invalid_argument("prop4 needs r_" + side + " or E_" + side);
}

std::map<std::string, ParamValue> as_params(const std::map<std::string, double>& p) {
  std::map<std::string, ParamValue> out;
  for (const auto& [k, v] : p) out[k] = v;
  return out;
}

}  // namespace

std::vector<std::string> bound_tags() {
  return {"prop2",  "lemma3",   "cor1",   "prop3", "lemma4",   "amplifier", "prop4",          "cor2a",
          "cor2b",  "chi-cb-1", "chi-cb-2", "crossover", "prop6a", "prop6b", "prop7", "prop8",
          "remark3", "cor3",    "discretization", "s-ineq"};
}

BoundReport evaluate_bound(const std::string& tag, const std::map<std::string, double>& p) {
  // Energy-type bounds are evaluated for the oscillator spectrum E_k = k.
  const HamiltonianSpec osc = HamiltonianSpec::oscillator(2);
  auto params = as_params(p);
  auto report = [&](double eps, double rhs, std::optional<double> lhs = std::nullopt) {
    if (p.count("lhs")) lhs = p.at("lhs");
    return make_report(tag, eps, rhs, lhs, params);
  };
  if (tag == "prop2" || tag == "lemma3" || tag == "cor1") {
    const double eps = need(p, "eps");
    return report(eps, scb_rank(eps, need_int(p, "r")));
  }
  if (tag == "prop3" || tag == "lemma4") {
    const double eps = need(p, "eps");
    return report(eps, scb_energy(eps, need(p, "E") - opt(p, "subtract", 0.0), osc));
  }
  if (tag == "amplifier") {
    const double eps = need(p, "eps"), k = need(p, "k");
    return report(eps, scb_energy(eps, k * k - 1.0 + need(p, "Nc"), osc));
  }
  if (tag == "prop4") {
    const double eps = need(p, "eps");
    return report(eps, scb_holevo(eps, holevo_case(p, "mu", osc), holevo_case(p, "nu", osc)));
  }
  if (tag == "cor2a") {
    const double eps = need(p, "eps");
    return report(eps, cb_holevo_rank(eps, need_int(p, "r_mu"), need_int(p, "r_nu")));
  }
  if (tag == "cor2b") {
    const double eps = need(p, "eps");
    return report(eps, cb_holevo_energy(eps, need(p, "E_mu"), osc, need(p, "E_nu"), osc));
  }
  if (tag == "chi-cb-1") {
    const double eps = need(p, "eps");
    return report(eps, chi_cb_prior_dim(eps, need_int(p, "d")));
  }
  if (tag == "chi-cb-2") {
    const double eps = need(p, "eps");
    const auto b = chi_cb_prior_energy(eps, need(p, "E"), osc);
    params["t_opt"] = b.t_opt;
    params["minimizer"] = std::string(b.boundary ? "boundary" : "interior");
    return report(eps, b.value);
  }
  if (tag == "crossover") {
    const int d = need_int(p, "d");
    const auto e = crossover_eps(d);
    params["v"] = crossover_v(d);
    params["crossover"] = e ? ParamValue(*e) : ParamValue(std::string("none"));
    return report(0.0, e.value_or(1.0));
  }
  if (tag == "prop6a") {
    const double delta = need(p, "delta");
    return report(delta, ae_upper_rank(delta, need_int(p, "r")));
  }
  if (tag == "prop6b") {
    const double delta = need(p, "delta");
    return report(delta, ae_upper_energy(delta, need(p, "E"), osc));
  }
  if (tag == "prop7") {
    const double delta = need(p, "delta");
    return report(delta, aoe_upper(need_int(p, "r"), delta, need(p, "E"), osc));
  }
  if (tag == "prop8") {
    const double eps = need(p, "eps");
    return report(eps, eof_scb(eps, need_int(p, "r")));
  }
  if (tag == "remark3") {
    const double f = need(p, "F");
    return report(std::sqrt(1.0 - f), eof_scb_fid(f, need_int(p, "r")));
  }
  if (tag == "cor3") {
    const double d = need(p, "delta");
    return report(d, eof_upper_sep(d, need_int(p, "r")));
  }
  if (tag == "discretization") {
    const double delta = need(p, "delta");
    const auto b = discretization_bounds(delta, need(p, "N"));
    params["gain"] = b.gain;
    return report(delta, b.loss);
  }
  if (tag == "s-ineq") {
    const double eps = need(p, "eps"), n = need(p, "N");
    const double lhs = eps * g_func(n / eps) - eps * g_func(n);
    params["ceiling"] = 1.0 / std::numbers::e + 1.0 + 1.0 / n;
    params["both_hold"] = std::string(s_ineq_check(eps, n) ? "true" : "false");
    return make_report(tag, eps, -eps * std::log(eps) + eps * (1.0 + eps / n), lhs, params);
  }
  throw std::invalid_argument("unknown bound tag '" + tag + "'");
}

}  // namespace qens
