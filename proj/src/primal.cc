// Copyright 2026 The Locsec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "locsec/primal.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <random>
#include <sstream>

#include "locsec/capacity.h"
#include "locsec/errors.h"
#include "locsec/spectral.h"

namespace locsec {

namespace {

constexpr int kBisectionSteps = 80;

// Coordinates: the perturbation subspace expressed in the eigenbasis of the
// restricted Lam, so leakage is a diagonal quadratic form.
struct Frame {
  Eigen::MatrixXd to_full;  // |X| x m, orthonormal columns
  Eigen::MatrixXd a;        // restricted V in these coordinates
  Eigen::VectorXd mu;       // restricted Lam eigenvalues (>= 0)
};

Frame make_frame(const EitSystem& sys) {
  const SymEig lam_eig = sym_eig(restrict_to(sys.lam, sys.basis));
  Frame f;
  f.to_full = sys.basis * lam_eig.vectors;
  f.a = restrict_to(sys.v, f.to_full);
  f.mu = lam_eig.values.cwiseMax(0.0);
  return f;
}

// Euclidean projection (in the P_U-weighted norm) onto
// {rate <= r_cap, leak <= t_cap}. The minimizer scales coordinate k by
// 1 / (1 + a + b mu_k) for multipliers a, b >= 0.
class EllipsoidProjector {
 public:
  EllipsoidProjector(const Eigen::VectorXd& mu, double r_cap, double t_cap)
      : mu_(mu), r_cap_(r_cap), t_cap_(t_cap) {}

  // Projects y in place; returns the multipliers (a, b).
  std::pair<double, double> project(Eigen::MatrixXd& y, const Eigen::VectorXd& pu) {
    w_ = y.cwiseAbs2() * pu;
    double a = 0.0;
    double b = 0.0;
    if (rate(0.0, 0.0) > r_cap_ || leak(0.0, 0.0) > t_cap_) {
      a = solve_a(0.0);
      if (leak(a, 0.0) > t_cap_) {
        a = 0.0;
        b = solve_b_alone();
        if (rate(0.0, b) > r_cap_) {
          double lo = 0.0;
          double hi = 1.0;
          while (leak(solve_a(hi), hi) > t_cap_) hi *= 2.0;
          for (int i = 0; i < kBisectionSteps && hi - lo > 1e-15 * hi; ++i) {
            const double mid = 0.5 * (lo + hi);
            (leak(solve_a(mid), mid) > t_cap_ ? lo : hi) = mid;
          }
          b = hi;
          a = solve_a(b);
        }
      }
    }
    for (Eigen::Index k = 0; k < y.rows(); ++k) y.row(k) /= 1.0 + a + b * mu_(k);
    return {a, b};
  }

 private:
  double rate(double a, double b) const {
    double s = 0.0;
    for (Eigen::Index k = 0; k < w_.size(); ++k) {
      const double g = 1.0 + a + b * mu_(k);
      s += w_(k) / (g * g);
    }
    return s;
  }

  double leak(double a, double b) const {
    double s = 0.0;
    for (Eigen::Index k = 0; k < w_.size(); ++k) {
      const double g = 1.0 + a + b * mu_(k);
      s += mu_(k) * w_(k) / (g * g);
    }
    return s;
  }

  // Smallest a >= 0 with rate(a, b) <= r_cap.
  double solve_a(double b) const {
    if (rate(0.0, b) <= r_cap_) return 0.0;
    double lo = 0.0;
    double hi = std::sqrt(w_.sum() / r_cap_);
    for (int i = 0; i < kBisectionSteps && hi - lo > 1e-15 * hi; ++i) {
      const double mid = 0.5 * (lo + hi);
      (rate(mid, b) > r_cap_ ? lo : hi) = mid;
    }
    return hi;
  }

  double solve_b_alone() const {
    double lo = 0.0;
    double hi = 1.0;
    while (leak(0.0, hi) > t_cap_) hi *= 2.0;
    for (int i = 0; i < kBisectionSteps && hi - lo > 1e-15 * hi; ++i) {
      const double mid = 0.5 * (lo + hi);
      (leak(0.0, mid) > t_cap_ ? lo : hi) = mid;
    }
    return hi;
  }

  Eigen::VectorXd mu_;
  double r_cap_;
  double t_cap_;
  Eigen::VectorXd w_;
};

double weighted_form(const Eigen::MatrixXd& c, const Eigen::MatrixXd& m,
                     const Eigen::VectorXd& pu) {
  return ((m * c).cwiseProduct(c)).colwise().sum().dot(pu.transpose());
}

void center(Eigen::MatrixXd& c, const Eigen::VectorXd& pu) {
  const Eigen::VectorXd mean = c * pu;
  c.colwise() -= mean;
}

struct RunState {
  Eigen::MatrixXd c;
  Eigen::VectorXd pu;
  double objective = -1.0;
  double rho_hat = 0.0;
  double nu_hat = 0.0;
  bool converged = false;
  std::size_t iterations = 0;
};

RunState run_once(const Frame& frame, double r_cap, double t_cap,
                  const PrimalOptions& options, std::uint64_t restart) {
  const Eigen::Index m = frame.a.rows();
  const auto card = static_cast<Eigen::Index>(options.card_u);
  std::seed_seq seq{static_cast<std::uint32_t>(options.seed),
                    static_cast<std::uint32_t>(options.seed >> 32),
                    static_cast<std::uint32_t>(restart)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> gauss(0.0, 1.0);

  RunState state;
  state.pu = Eigen::VectorXd::Constant(card, 1.0 / static_cast<double>(card));
  state.c.resize(m, card);
  for (Eigen::Index u = 0; u < card; ++u) {
    for (Eigen::Index k = 0; k < m; ++k) state.c(k, u) = gauss(rng);
  }
  center(state.c, state.pu);
  EllipsoidProjector projector(frame.mu, r_cap, t_cap);
  // Start on the boundary of the feasible set.
  state.c *= 1e3 * std::sqrt(r_cap + t_cap);
  projector.project(state.c, state.pu);

  const double top = std::max(sym_eig(frame.a).values(0), 0.0);
  if (top <= 0.0) {
    state.objective = 0.0;
    state.converged = true;
    return state;
  }
  const double t = options.step / top;

  RunState best = state;
  best.objective = weighted_form(state.c, frame.a, state.pu);
  std::deque<double> history;
  history.push_back(best.objective);

  for (std::size_t it = 1; it <= options.max_iters; ++it) {
    Eigen::MatrixXd y = state.c + 2.0 * t * (frame.a * state.c);
    center(y, state.pu);
    const auto [a, b] = projector.project(y, state.pu);
    state.c = std::move(y);
    state.rho_hat = a / (2.0 * t);
    state.nu_hat = b / (2.0 * t);

    if (options.optimize_pu) {
      // Per-message Lagrangian value drives an exponentiated-gradient step.
      Eigen::VectorXd gain(card);
      for (Eigen::Index u = 0; u < card; ++u) {
        const Eigen::VectorXd cu = state.c.col(u);
        gain(u) = cu.dot(frame.a * cu) - state.rho_hat * cu.squaredNorm() -
                  state.nu_hat * cu.dot(frame.mu.cwiseProduct(cu));
      }
      const double spread = gain.cwiseAbs().maxCoeff();
      if (spread > 0.0) {
        for (Eigen::Index u = 0; u < card; ++u) {
          state.pu(u) *= std::exp(0.1 * gain(u) / spread);
        }
        state.pu /= state.pu.sum();
        state.pu = state.pu.cwiseMax(1e-6);
        state.pu /= state.pu.sum();
        center(state.c, state.pu);
        projector.project(state.c, state.pu);
      }
    }

    state.objective = weighted_form(state.c, frame.a, state.pu);
    state.iterations = it;
    if (state.objective >= best.objective) {
      const bool conv = best.converged;
      best = state;
      best.converged = conv;
    }
    history.push_back(state.objective);
    if (history.size() > options.window + 1) history.pop_front();
    if (history.size() == options.window + 1) {
      const double gain = history.back() - history.front();
      if (gain < options.tolerance * std::max(std::abs(history.back()), 1e-300)) {
        best.converged = true;
        best.iterations = it;
        break;
      }
    }
  }
  return best;
}

}  // namespace

PrimalResult optimize_primal(const EitSystem& sys, double rate_budget,
                             double leakage_budget, const PrimalOptions& options) {
  if (options.card_u < 2) throw DomainError("optimize_primal: need at least two messages");
  if (!(rate_budget > 0.0) || !(leakage_budget > 0.0)) {
    std::ostringstream msg;
    msg << "optimize_primal: budgets must be positive (R' = " << rate_budget
        << ", Theta' = " << leakage_budget << ")";
    throw DomainError(msg.str());
  }
  const Frame frame = make_frame(sys);
  RunState best;
  for (std::size_t r = 0; r < std::max<std::size_t>(options.restarts, 1); ++r) {
    RunState run = run_once(frame, rate_budget, leakage_budget, options, r);
    if (r == 0 || run.objective > best.objective) best = std::move(run);
  }

  Eigen::MatrixXd l = frame.to_full * best.c;
  l = project_out_reference(sys.sqrt_px, l);
  Pmf pu = Pmf::renormalized(best.pu);
  // Exact consistency after the P_U renormalization.
  l.colwise() -= l * pu.probs();
  const double limit = max_valid_epsilon(sys.px, l);
  const double epsilon = std::min(0.5, 0.5 * limit);

  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(l.rows(), l.rows());
  PrimalResult result{
      .strategy = PerturbationStrategy(sys.px, pu, l, epsilon),
      .objective = weighted_quadratic(pu, l, sys.v),
      .rate_used = weighted_quadratic(pu, l, identity),
      .leakage_used = weighted_quadratic(pu, l, sys.lam),
      .converged = best.converged,
      .iterations = best.iterations,
      .rho_hat = best.rho_hat,
      .nu_hat = best.nu_hat,
  };
  return result;
}

double kkt_alignment_residual(const PrimalResult& result, const EitSystem& sys) {
  const Eigen::MatrixXd& l = result.strategy.l();
  const Eigen::Index n = l.rows();
  const Eigen::MatrixXd k = -sys.v + result.rho_hat * Eigen::MatrixXd::Identity(n, n) +
                            result.nu_hat * sys.lam;
  double worst = 0.0;
  for (Eigen::Index u = 0; u < l.cols(); ++u) {
    const double norm = l.col(u).norm();
    if (norm == 0.0) continue;
    worst = std::max(worst, (k * l.col(u)).norm() / norm);
  }
  return worst;
}

std::vector<PuInvarianceRow> pu_invariance_sweep(const EitSystem& sys, double rate,
                                                 double leakage, double epsilon,
                                                 std::size_t card_lo, std::size_t card_hi,
                                                 const PrimalOptions& base) {
  if (card_lo < 2 || card_hi < card_lo) {
    throw DomainError("pu_invariance_sweep: need 2 <= card_lo <= card_hi");
  }
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw DomainError("pu_invariance_sweep: epsilon must lie in (0, 1)");
  }
  const double scale = 2.0 / (epsilon * epsilon);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  double dual_min = nan;
  double paper_max = nan;
  try {
    const LpProblem lp = build_lp(pencil_spectrum(sys), rate, leakage);
    dual_min = solve_lp(lp, LpForm::kDualMin).value;
    try {
      paper_max = solve_lp(lp, LpForm::kPaperLiteralMax).value;
    } catch (const InfeasibleLpError&) {
    }
  } catch (const SingularPencilError&) {
  }

  std::vector<PuInvarianceRow> rows;
  for (std::size_t card = card_lo; card <= card_hi; ++card) {
    PrimalOptions options = base;
    options.card_u = card;
    const PrimalResult r = optimize_primal(sys, scale * rate, scale * leakage, options);
    rows.push_back({.card_u = card,
                    .primal = r.objective / scale,
                    .dual_min = dual_min,
                    .paper_max = paper_max,
                    .rate_used = r.rate_used / scale,
                    .leakage_used = r.leakage_used / scale});
  }
  return rows;
}

double achieved_ratio(const PerturbationStrategy& strategy, const EitSystem& sys) {
  const double leak = weighted_quadratic(strategy.pu(), strategy.l(), sys.lam);
  if (leak <= 1e-12) {
    std::ostringstream msg;
    msg << "achieved_ratio: strategy leaks " << leak << " (quadratic), ratio undefined";
    throw DomainError(msg.str());
  }
  return weighted_quadratic(strategy.pu(), strategy.l(), sys.v) / leak;
}

}  // namespace locsec
