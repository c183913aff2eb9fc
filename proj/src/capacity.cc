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

#include "locsec/capacity.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "locsec/errors.h"

namespace locsec {

namespace {

constexpr double kTieTolerance = 1e-12;

// rho as a function of nu along the lower boundary of the feasible region.
double envelope(const LpProblem& lp, double nu) {
  double rho = 0.0;
  for (Eigen::Index j = 0; j < lp.d.size(); ++j) {
    rho = std::max(rho, lp.lam(j) * (lp.d(j) - nu));
  }
  return rho;
}

bool lexicographically_less(const LpVertex& a, const LpVertex& b) {
  if (std::abs(a.rho - b.rho) > kTieTolerance * std::max(1.0, std::abs(b.rho))) {
    return a.rho < b.rho;
  }
  return a.nu < b.nu;
}

LpSolution finish(const LpProblem& lp, double rho, double nu, LpForm form) {
  LpSolution sol;
  sol.rho = std::max(rho, 0.0);
  sol.nu = std::max(nu, 0.0);
  sol.value = sol.rho * lp.rate + sol.nu * lp.leakage;
  sol.form = form;
  for (Eigen::Index j = 0; j < lp.d.size(); ++j) {
    const double slack = sol.rho + sol.nu * lp.lam(j) - lp.d(j) * lp.lam(j);
    if (std::abs(slack) <= kActivityTolerance) {
      sol.active_modes.push_back(static_cast<std::size_t>(j));
    }
  }
  if (sol.nu < kMultiplierZero) {
    sol.regime = Regime::kRateDominant;
  } else if (sol.rho < kMultiplierZero) {
    sol.regime = Regime::kLeakageDominant;
  } else {
    sol.regime = Regime::kIntermediate;
  }
  return sol;
}

LpSolution solve_dual_min(const LpProblem& lp) {
  double nu = 0.0;
  double rho = envelope(lp, nu);
  // Each pass moves onto a boundary piece with strictly smaller lam, so the
  // walk visits at most modes() + 1 vertices.
  for (std::size_t pass = 0; pass <= lp.modes() && rho > 0.0; ++pass) {
    const double floor = rho - kTieTolerance * std::max(1.0, rho);
    Eigen::Index piece = -1;
    for (Eigen::Index j = 0; j < lp.d.size(); ++j) {
      if (lp.lam(j) * (lp.d(j) - nu) >= floor &&
          (piece < 0 || lp.lam(j) < lp.lam(piece))) {
        piece = j;
      }
    }
    const double descent = lp.rate * lp.lam(piece);
    const double slope = lp.leakage - descent;
    if (slope > kTieTolerance * std::max(lp.leakage, descent)) break;

    double next = lp.d(piece);
    for (Eigen::Index k = 0; k < lp.d.size(); ++k) {
      if (lp.lam(k) >= lp.lam(piece)) continue;
      const double cross = (lp.d(piece) * lp.lam(piece) - lp.d(k) * lp.lam(k)) /
                           (lp.lam(piece) - lp.lam(k));
      if (cross > nu) next = std::min(next, cross);
    }
    nu = next;
    rho = envelope(lp, nu);
  }
  return finish(lp, rho, nu, LpForm::kDualMin);
}

LpSolution solve_paper_max(const LpProblem& lp) {
  const LpSolution lower = solve_dual_min(lp);
  const double slack = kActivityTolerance * std::max(1.0, lp.c_max);
  if (lower.value > lp.c_max + slack) {
    std::ostringstream msg;
    msg << "solve_lp: capped multiplier LP is infeasible; the smallest "
           "achievable rho R + nu Theta is "
        << lower.value << " > C_max = " << lp.c_max
        << " (feasibility is guaranteed when lam_max_perp(V) R > Theta d_max)";
    throw InfeasibleLpError(msg.str());
  }
  // Every point of the cap line inside the region is optimal; take the one
  // with the smallest rho, i.e. the largest admissible nu.
  const double ratio = lp.leakage / lp.rate;
  double nu_hi = lp.c_max / lp.leakage;
  double nu_lo = 0.0;
  for (Eigen::Index j = 0; j < lp.d.size(); ++j) {
    const double a = lp.lam(j) - ratio;
    const double b = lp.d(j) * lp.lam(j) - lp.c_max / lp.rate;
    if (a > 0.0) {
      nu_lo = std::max(nu_lo, b / a);
    } else if (a < 0.0) {
      nu_hi = std::min(nu_hi, b / a);
    }
  }
  if (nu_hi < nu_lo) {
    // The cap line only touches the region within rounding; fall back to
    // the lowest boundary point.
    nu_hi = lower.nu;
  }
  const double nu = std::max(nu_hi, 0.0);
  const double rho = std::max((lp.c_max - nu * lp.leakage) / lp.rate, 0.0);
  return finish(lp, rho, nu, LpForm::kPaperLiteralMax);
}

struct Line {
  double a, b, c;  // a rho + b nu = c
};

std::vector<Line> constraint_lines(const LpProblem& lp, bool with_axes, bool with_cap) {
  std::vector<Line> lines;
  if (with_axes) {
    lines.push_back({1.0, 0.0, 0.0});
    lines.push_back({0.0, 1.0, 0.0});
  }
  for (Eigen::Index j = 0; j < lp.d.size(); ++j) {
    lines.push_back({1.0, lp.lam(j), lp.d(j) * lp.lam(j)});
  }
  if (with_cap) lines.push_back({lp.rate, lp.leakage, lp.c_max});
  return lines;
}

bool intersect(const Line& p, const Line& q, LpVertex& out) {
  const double det = p.a * q.b - q.a * p.b;
  const double scale = (std::abs(p.a) + std::abs(p.b)) * (std::abs(q.a) + std::abs(q.b));
  if (std::abs(det) <= 1e-14 * scale) return false;
  out.rho = (p.c * q.b - q.c * p.b) / det;
  out.nu = (p.a * q.c - q.a * p.c) / det;
  return true;
}

bool vertex_feasible(const LpProblem& lp, const LpVertex& v, bool capped) {
  if (v.rho < -kMultiplierZero || v.nu < -kMultiplierZero) return false;
  for (Eigen::Index j = 0; j < lp.d.size(); ++j) {
    if (v.rho + v.nu * lp.lam(j) < lp.d(j) * lp.lam(j) - kActivityTolerance) return false;
  }
  if (capped &&
      v.rho * lp.rate + v.nu * lp.leakage >
          lp.c_max + kActivityTolerance * std::max(1.0, lp.c_max)) {
    return false;
  }
  return true;
}

}  // namespace

std::string to_string(LpForm form) {
  return form == LpForm::kDualMin ? "DualMin" : "PaperLiteralMax";
}

std::string to_string(Regime regime) {
  switch (regime) {
    case Regime::kRateDominant:
      return "RateDominant";
    case Regime::kLeakageDominant:
      return "LeakageDominant";
    case Regime::kIntermediate:
      return "Intermediate";
  }
  return "Unknown";
}

LpProblem make_lp(Eigen::VectorXd d, Eigen::VectorXd lam, double lam_max_perp_v,
                  double rate, double leakage) {
  if (!(rate > 0.0) || !(leakage > 0.0)) {
    std::ostringstream msg;
    msg << "build_lp: budgets must be positive (R = " << rate
        << ", Theta = " << leakage << ")";
    throw DomainError(msg.str());
  }
  if (d.size() == 0 || d.size() != lam.size()) {
    throw DimensionError("build_lp: need one (d, lam) pair per mode");
  }
  if (lam.minCoeff() <= 0.0) throw DomainError("build_lp: every lam_j must be positive");
  LpProblem lp;
  lp.rate = rate;
  lp.leakage = leakage;
  lp.d = std::move(d);
  lp.lam = std::move(lam);
  lp.lam_max_perp_v = lam_max_perp_v;
  lp.c_max = lam_max_perp_v * rate;
  return lp;
}

LpProblem build_lp(const PencilSpectrum& spec, double rate, double leakage) {
  return make_lp(spec.d, spec.lam, spec.lam_max_perp_v, rate, leakage);
}

LpSolution solve_lp(const LpProblem& lp, LpForm form) {
  return form == LpForm::kDualMin ? solve_dual_min(lp) : solve_paper_max(lp);
}

VertexSearchResult exhaustive_vertex_search(const LpProblem& lp, LpForm form) {
  const bool capped = form == LpForm::kPaperLiteralMax;
  const std::vector<Line> lines = constraint_lines(lp, true, capped);
  VertexSearchResult result;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t k = i + 1; k < lines.size(); ++k) {
      LpVertex v;
      if (!intersect(lines[i], lines[k], v) || !vertex_feasible(lp, v, capped)) continue;
      v.rho = std::max(v.rho, 0.0);
      v.nu = std::max(v.nu, 0.0);
      v.value = v.rho * lp.rate + v.nu * lp.leakage;
      result.vertices.push_back(v);
    }
  }
  if (result.vertices.empty()) return result;
  result.feasible = true;
  double best = result.vertices.front().value;
  for (const LpVertex& v : result.vertices) {
    best = capped ? std::max(best, v.value) : std::min(best, v.value);
  }
  const double band = kTieTolerance * std::max(1.0, std::abs(best));
  bool first = true;
  for (const LpVertex& v : result.vertices) {
    if (std::abs(v.value - best) > band) continue;
    if (first || lexicographically_less(v, result.best)) result.best = v;
    first = false;
  }
  return result;
}

bool feasibility_check(const PencilSpectrum& spec, double rate, double leakage) {
  return spec.lam_max_perp_v * rate > leakage * spec.d_max();
}

RegimeReport regime_report(const LpProblem& lp, const PencilSpectrum& spec) {
  RegimeReport report;
  report.c_rate = std::min(lp.lam_max_perp_v * lp.rate, lp.c_max);
  report.c_leakage = std::min(lp.d.maxCoeff() * lp.leakage, lp.c_max);
  report.c_inter = -std::numeric_limits<double>::infinity();
  report.sufficient_feasibility = feasibility_check(spec, lp.rate, lp.leakage);

  const std::vector<Line> lines = constraint_lines(lp, false, true);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t k = i + 1; k < lines.size(); ++k) {
      LpVertex v;
      if (!intersect(lines[i], lines[k], v)) continue;
      if (!(v.rho > kMultiplierZero && v.nu > kMultiplierZero)) continue;
      if (!vertex_feasible(lp, v, true)) continue;
      v.value = v.rho * lp.rate + v.nu * lp.leakage;
      report.interior_vertices.push_back(v);
      report.c_inter = std::max(report.c_inter, v.value);
    }
  }

  report.dual_min = solve_lp(lp, LpForm::kDualMin);
  try {
    report.paper_max = solve_lp(lp, LpForm::kPaperLiteralMax);
  } catch (const InfeasibleLpError&) {
    report.paper_max.reset();
  }
  return report;
}

double c_sic(const LpSolution& sol, double rate, double leakage) {
  return sol.rho * rate + sol.nu * leakage;
}

double bswc_c_sic(double p_bob, double q_eve, double rate, double leakage) {
  if (!(p_bob >= 0.0 && p_bob <= 1.0) || !(q_eve >= 0.0 && q_eve <= 1.0)) {
    throw ValidationError("bswc_c_sic: crossovers must lie in [0, 1]");
  }
  if (!(rate > 0.0) || !(leakage >= 0.0)) {
    throw DomainError("bswc_c_sic: need R > 0 and Theta >= 0");
  }
  const double lam_v = (1.0 - 2.0 * p_bob) * (1.0 - 2.0 * p_bob);
  const double lam_z = (1.0 - 2.0 * q_eve) * (1.0 - 2.0 * q_eve);
  if (q_eve == 0.5 || lam_z <= leakage / rate) return lam_v * rate;
  return lam_v / lam_z * leakage;
}

KktReport kkt_commuting_check(const PencilSpectrum& spec, const LpSolution& sol,
                              double tolerance) {
  if (!spec.commuting) {
    std::ostringstream msg;
    msg << "kkt_commuting_check: V and Lam do not commute (||[V, Lam]||_F = "
        << spec.commutator << "); per-mode eigenvalue matching is undefined";
    throw DomainError(msg.str());
  }
  KktReport report;
  for (Eigen::Index j = 0; j < spec.modes.cols(); ++j) {
    ModeResidual r;
    r.mode = static_cast<std::size_t>(j);
    r.d_v = spec.v_quotient(j);
    r.d_lam = spec.lam_quotient(j);
    r.residual = std::abs(r.d_v - sol.rho - sol.nu * r.d_lam);
    r.active = std::find(sol.active_modes.begin(), sol.active_modes.end(),
                         r.mode) != sol.active_modes.end();
    if (r.active) report.max_active_residual = std::max(report.max_active_residual, r.residual);
    report.modes.push_back(r);
  }
  report.passed = report.max_active_residual <= tolerance;
  return report;
}

ExactCapacity exact_quadratic_capacity(const EitSystem& sys, double rate, double leakage) {
  if (!(rate > 0.0) || !(leakage > 0.0)) {
    std::ostringstream msg;
    msg << "exact_quadratic_capacity: budgets must be positive (R = " << rate
        << ", Theta = " << leakage << ")";
    throw DomainError(msg.str());
  }
  const Eigen::MatrixXd v = restrict_to(sys.v, sys.basis);
  const Eigen::MatrixXd lam = restrict_to(sys.lam, sys.basis);
  auto rho_at = [&](double nu) { return std::max(sym_eig(v - nu * lam).values(0), 0.0); };
  auto dual = [&](double nu) { return rho_at(nu) * rate + nu * leakage; };

  // Convex in nu; the minimizer satisfies nu * Theta <= dual(0).
  double lo = 0.0;
  double hi = dual(0.0) / leakage;
  constexpr double kInvPhi = 0.6180339887498949;
  double a = hi - kInvPhi * (hi - lo);
  double b = lo + kInvPhi * (hi - lo);
  double fa = dual(a);
  double fb = dual(b);
  for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++i) {
    if (fa <= fb) {
      hi = b;
      b = a;
      fb = fa;
      a = hi - kInvPhi * (hi - lo);
      fa = dual(a);
    } else {
      lo = a;
      a = b;
      fa = fb;
      b = lo + kInvPhi * (hi - lo);
      fb = dual(b);
    }
  }
  ExactCapacity best{.value = dual(0.0), .rho = rho_at(0.0), .nu = 0.0};
  for (double nu : {lo, 0.5 * (lo + hi), hi}) {
    const double f = dual(nu);
    if (f < best.value) best = {.value = f, .rho = rho_at(nu), .nu = nu};
  }
  return best;
}

}  // namespace locsec
