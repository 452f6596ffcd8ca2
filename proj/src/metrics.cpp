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

#include "qens/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "qens/lp.hpp"
#include "qens/transport.hpp"

namespace qens {

namespace {

void require_same_dim(const Ensemble& mu, const Ensemble& nu, const char* what) {
  if (mu.dim() != nu.dim()) throw DimensionError(std::string(what) + ": ensembles have different dimensions");
}

struct Cut {
  double a, b;
};

Cut cut_from(const CMatrix& x, const DensityMatrix& rho, const DensityMatrix& sigma) {
  return {(x * rho.matrix()).trace().real(), -(x * sigma.matrix()).trace().real()};
}

// Epigraph program for the ehs coupling, posed in dual form so that cuts are
// columns: variables lambda >= 0 per cut and free alpha_i, beta_j.
//   max sum p_i alpha_i + sum q_j beta_j
//   s.t. sum_cuts lambda <= 1/2,  alpha_i <= sum a lambda,  beta_j <= sum b lambda  (per pair)
// The row duals of the last two families are the coupling P_ij, Q_ij.
class EhsProgram {
 public:
  EhsProgram(const Ensemble& mu, const Ensemble& nu)
      : n_(mu.size()), m_(nu.size()), lp_(std::vector<lp::Sense>(3 * n_ * m_, lp::Sense::LessEqual), rhs(n_ * m_)),
        cuts_(n_ * m_) {
    const int nm = n_ * m_;
    for (int i = 0; i < n_; ++i) {
      lp::Column plus, minus;
      for (int j = 0; j < m_; ++j) {
        plus.push_back({nm + pair(i, j), 1.0});
        minus.push_back({nm + pair(i, j), -1.0});
      }
      lp_.add_column(-mu.weight(i), plus);
      lp_.add_column(mu.weight(i), minus);
    }
    for (int j = 0; j < m_; ++j) {
      lp::Column plus, minus;
      for (int i = 0; i < n_; ++i) {
        plus.push_back({2 * nm + pair(i, j), 1.0});
        minus.push_back({2 * nm + pair(i, j), -1.0});
      }
      lp_.add_column(-nu.weight(j), plus);
      lp_.add_column(nu.weight(j), minus);
    }
  }

  int pair(int i, int j) const { return i * m_ + j; }

  void add_cut(int k, Cut c) {
    const int nm = n_ * m_;
    cuts_[k].push_back(c);
    lp_.add_column(0.0, {{k, 1.0}, {nm + k, -c.a}, {2 * nm + k, -c.b}});
  }

  double model(int k, double p, double q) const {
    double best = 0.0;
    for (const auto& c : cuts_[k]) best = std::max(best, c.a * p + c.b * q);
    return best;
  }

  // Returns the lower bound; fills P, Q.
  double solve(Eigen::MatrixXd& P, Eigen::MatrixXd& Q) {
    if (lp_.solve() != lp::Status::Optimal) throw std::runtime_error("d_ehs: cut LP did not solve");
    const auto y = lp_.duals();
    const int nm = n_ * m_;
    P.resize(n_, m_);
    Q.resize(n_, m_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < m_; ++j) {
        P(i, j) = std::max(0.0, -y[nm + pair(i, j)]);
        Q(i, j) = std::max(0.0, -y[2 * nm + pair(i, j)]);
      }
    return -lp_.objective();
  }

  long iterations() const { return lp_.iterations(); }

 private:
  static std::vector<double> rhs(int nm) {
    std::vector<double> r(3 * nm, 0.0);
    std::fill(r.begin(), r.begin() + nm, 0.5);
    return r;
  }

  int n_, m_;
  lp::Simplex lp_;
  std::vector<std::vector<Cut>> cuts_;
};

// Rescale rows of P to sums p and columns of Q to sums q (absorbs round-off).
void fix_marginals(Eigen::MatrixXd& P, Eigen::MatrixXd& Q, const Ensemble& mu, const Ensemble& nu) {
  for (int i = 0; i < P.rows(); ++i) {
    const double s = P.row(i).sum();
    if (s > 0.0)
      P.row(i) *= mu.weight(i) / s;
    else
      P.row(i).setConstant(mu.weight(i) / P.cols());
  }
  for (int j = 0; j < Q.cols(); ++j) {
    const double s = Q.col(j).sum();
    if (s > 0.0)
      Q.col(j) *= nu.weight(j) / s;
    else
      Q.col(j).setConstant(nu.weight(j) / Q.rows());
  }
}

void add_angle_cuts(EhsProgram& prog, const Ensemble& mu, const Ensemble& nu, int angles) {
  for (int i = 0; i < mu.size(); ++i)
    for (int j = 0; j < nu.size(); ++j) {
      const int k = prog.pair(i, j);
      prog.add_cut(k, {1.0, -1.0});
      prog.add_cut(k, {-1.0, 1.0});
      for (int l = 0; l < angles; ++l) {
        const double t = angles == 1 ? 0.0 : (std::numbers::pi / 2) * l / (angles - 1);
        const CMatrix a = std::cos(t) * mu.state(i).matrix() - std::sin(t) * nu.state(j).matrix();
        prog.add_cut(k, cut_from(sign_operator(a, 1e-13), mu.state(i), nu.state(j)));
      }
    }
}

}  // namespace

DensityMatrix average_state(const Ensemble& mu) {
  CMatrix s = CMatrix::Zero(mu.dim(), mu.dim());
  for (const auto& m : mu.members()) s += m.weight * m.state.matrix();
  return DensityMatrix::trusted(std::move(s));
}

double d0(const Ensemble& mu, const Ensemble& nu) {
  require_same_dim(mu, nu, "d0");
  const int n = std::max(mu.size(), nu.size());
  const Ensemble a = mu.padded(n), b = nu.padded(n);
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += trace_norm(CMatrix(a.weight(i) * a.state(i).matrix() - b.weight(i) * b.state(i).matrix()));
  return 0.5 * s;
}

Eigen::MatrixXd kantorovich_cost(const Ensemble& mu, const Ensemble& nu) {
  require_same_dim(mu, nu, "kantorovich_cost");
  Eigen::MatrixXd c(mu.size(), nu.size());
  for (int i = 0; i < mu.size(); ++i)
    for (int j = 0; j < nu.size(); ++j)
      c(i, j) = 0.5 * trace_norm(CMatrix(mu.state(i).matrix() - nu.state(j).matrix()));
  return c;
}

CouplingSolution d_kantorovich(const Ensemble& mu, const Ensemble& nu) {
  const TransportResult tr = solve_transport(kantorovich_cost(mu, nu), mu.weights(), nu.weights());
  CouplingSolution out;
  out.value = tr.value;
  out.plan = tr.plan;
  out.iterations = tr.iterations;
  out.lower = tr.value;
  return out;
}

double dk_upper(const Ensemble& mu, const Ensemble& nu) {
  require_same_dim(mu, nu, "dk_upper");
  const int n = std::max(mu.size(), nu.size());
  const Ensemble a = mu.padded(n), b = nu.padded(n);
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    const double p = a.weight(i), q = b.weight(i);
    s += std::min(p, q) * trace_norm(CMatrix(a.state(i).matrix() - b.state(i).matrix())) + std::abs(p - q);
  }
  return 0.5 * s;
}

CouplingSolution d_ehs(const Ensemble& mu, const Ensemble& nu, const EhsOptions& opt) {
  require_same_dim(mu, nu, "d_ehs");
  EhsProgram prog(mu, nu);
  add_angle_cuts(prog, mu, nu, opt.seed_angles);
  CouplingSolution out;
  out.converged = false;
  Eigen::MatrixXd P, Q;
  double best_upper = std::numeric_limits<double>::infinity();
  for (int round = 0; round < opt.max_rounds; ++round) {
    const double lower = prog.solve(P, Q);
    fix_marginals(P, Q, mu, nu);
    double upper = 0.0;
    std::vector<std::pair<int, CMatrix>> signs;
    std::vector<double> f(mu.size() * nu.size(), 0.0);
    for (int i = 0; i < mu.size(); ++i)
      for (int j = 0; j < nu.size(); ++j) {
        const CMatrix a = P(i, j) * mu.state(i).matrix() - Q(i, j) * nu.state(j).matrix();
        const int k = prog.pair(i, j);
        f[k] = trace_norm(a);
        upper += 0.5 * f[k];
        if (f[k] > prog.model(k, P(i, j), Q(i, j)) + 1e-14) signs.push_back({k, sign_operator(a, 1e-14)});
      }
    out.lower = std::max(out.lower, lower);
    if (upper < best_upper) {
      best_upper = upper;
      out.value = upper;
      out.plan = P;
      out.plan_q = Q;
    }
    out.iterations = round + 1;
    out.gap = std::max(0.0, best_upper - out.lower);
    if (out.gap <= opt.tol) {
      out.converged = true;
      break;
    }
    if (signs.empty()) break;
    for (const auto& [k, x] : signs) {
      const int i = k / nu.size(), j = k % nu.size();
      prog.add_cut(k, cut_from(x, mu.state(i), nu.state(j)));
    }
  }
  return out;
}

double ehs_angle_grid(const Ensemble& mu, const Ensemble& nu, int angles) {
  require_same_dim(mu, nu, "ehs_angle_grid");
  EhsProgram prog(mu, nu);
  add_angle_cuts(prog, mu, nu, angles);
  Eigen::MatrixXd P, Q;
  return prog.solve(P, Q);
}

DensityMatrix qc_state(const Ensemble& mu) {
  const int d = mu.dim(), n = mu.size();
  CMatrix out = CMatrix::Zero(d * n, d * n);
  for (int k = 0; k < n; ++k)
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) out(a * n + k, b * n + k) = mu.weight(k) * mu.state(k).matrix()(a, b);
  return DensityMatrix::trusted(std::move(out));
}

double qc_conditional_entropy(const Ensemble& mu) {
  double s = 0.0;
  for (const auto& m : mu.members())
    if (m.weight > 0.0) s += m.weight * von_neumann_entropy(m.state);
  return s;
}

SteeringResult steer_to_average(const Ensemble& mu, const DensityMatrix& sigma) {
  if (mu.dim() != sigma.dim()) throw DimensionError("steer_to_average: dimension mismatch");
  const int d = mu.dim();
  const CMatrix rbar = average_state(mu).matrix();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rbar);
  const RVector& lam = es.eigenvalues();
  const CMatrix& U = es.eigenvectors();
  const double cutoff = lam.maxCoeff() * 1e-12;
  // rho^{-1/2} on the support, and the kernel basis.
  CMatrix inv_sqrt = CMatrix::Zero(d, d);
  std::vector<CVector> kernel;
  for (int k = 0; k < d; ++k) {
    if (lam(k) > cutoff)
      inv_sqrt += (1.0 / std::sqrt(lam(k))) * U.col(k) * U.col(k).adjoint();
    else
      kernel.push_back(U.col(k));
  }
  const CMatrix sqrt_rbar = psd_sqrt(rbar);
  const CMatrix sqrt_sigma = psd_sqrt(sigma.matrix());
  Eigen::JacobiSVD<CMatrix> svd(sqrt_rbar * sqrt_sigma, Eigen::ComputeFullU | Eigen::ComputeFullV);
  // Uhlmann-optimal purification of sigma in the same reference frame.
  const CMatrix B = sqrt_sigma * svd.matrixV() * svd.matrixU().adjoint();

  std::vector<CMatrix> povm;
  for (const auto& m : mu.members()) povm.push_back(inv_sqrt * (m.weight * m.state.matrix()) * inv_sqrt);
  for (const auto& v : kernel) povm.push_back(v * v.adjoint());

  std::vector<Member> nu_members, mu_members = mu.members();
  for (std::size_t i = 0; i < povm.size(); ++i) {
    CMatrix x = hermitian_part(B * povm[i] * B.adjoint());
    const double q = std::max(0.0, x.trace().real());
    if (q > 1e-15) {
      x /= q;
      // Clip round-off negativity so the result is a valid state.
      nu_members.push_back({q, DensityMatrix::trusted(positive_part(x) / positive_part(x).trace().real())});
    } else {
      nu_members.push_back({0.0, DensityMatrix::basis(d, 0)});
    }
    if (i >= mu_members.size()) mu_members.push_back({0.0, DensityMatrix::basis(d, 0)});
  }
  double total = 0.0;
  for (const auto& m : nu_members) total += m.weight;
  for (auto& m : nu_members) m.weight /= total;
  return {Ensemble(std::move(mu_members)), Ensemble(std::move(nu_members))};
}

namespace {

struct Support {
  std::vector<RVector> points;
  std::vector<double> w1, w2;
};

Support merge(const PointMeasure& p1, const PointMeasure& p2) {
  if (p1.ambient_dim() != p2.ambient_dim()) throw DimensionError("point measures live in different spaces");
  Support s;
  auto insert = [&](const RVector& x, double a, double b) {
    for (std::size_t k = 0; k < s.points.size(); ++k)
      if ((s.points[k] - x).norm() <= 1e-12) {
        s.w1[k] += a;
        s.w2[k] += b;
        return;
      }
    s.points.push_back(x);
    s.w1.push_back(a);
    s.w2.push_back(b);
  };
  for (int i = 0; i < p1.size(); ++i) insert(p1.points()[i], p1.weights()[i], 0.0);
  for (int i = 0; i < p2.size(); ++i) insert(p2.points()[i], 0.0, p2.weights()[i]);
  return s;
}

}  // namespace

double kr_distance(const PointMeasure& p1, const PointMeasure& p2) {
  const Support s = merge(p1, p2);
  const int n = static_cast<int>(s.points.size());
  // f = g - 1 with 0 <= g <= 2; the constant shift is invisible since sum(w1 - w2) = 0.
  std::vector<lp::Sense> senses;
  std::vector<double> rhs;
  std::vector<lp::Column> cols(n);
  for (int i = 0; i < n; ++i) {
    cols[i].push_back({static_cast<int>(rhs.size()), 1.0});
    senses.push_back(lp::Sense::LessEqual);
    rhs.push_back(2.0);
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double dij = (s.points[i] - s.points[j]).norm();
      if (dij >= 2.0) continue;
      const int r = static_cast<int>(rhs.size());
      cols[i].push_back({r, 1.0});
      cols[j].push_back({r, -1.0});
      senses.push_back(lp::Sense::LessEqual);
      rhs.push_back(dij);
    }
  lp::Simplex lp(senses, rhs);
  for (int i = 0; i < n; ++i) lp.add_column(-(s.w1[i] - s.w2[i]), cols[i]);
  if (lp.solve() != lp::Status::Optimal) throw std::runtime_error("kr_distance: LP failure");
  return std::max(0.0, -lp.objective());
}

double kr_modified(const PointMeasure& p1, const PointMeasure& p2) {
  if (p1.ambient_dim() != p2.ambient_dim()) throw DimensionError("point measures live in different spaces");
  Eigen::MatrixXd c(p1.size(), p2.size());
  for (int i = 0; i < p1.size(); ++i)
    for (int j = 0; j < p2.size(); ++j) c(i, j) = (p1.points()[i] - p2.points()[j]).norm();
  return solve_transport(c, p1.weights(), p2.weights()).value;
}

}  // namespace qens
