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

// The two-variable multiplier LP behind the approximate local secrecy
// capacity C = rho* R + nu* Theta. Each generalized eigenmode j of (V, Lam)
// contributes the half-plane
//
//   rho + nu * lam_j >= d_j * lam_j,     rho, nu >= 0.
//
// Two objective senses are supported:
//   kDualMin          minimize rho R + nu Theta over the half-planes.
//   kPaperLiteralMax  maximize rho R + nu Theta with the extra cap
//                     rho R + nu Theta <= C_max = lam_max_perp(V) R.
// kDualMin reproduces the binary symmetric closed form and is the default
// for reported capacities.

#ifndef LOCSEC_CAPACITY_H_
#define LOCSEC_CAPACITY_H_

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "locsec/spectral.h"

namespace locsec {

enum class LpForm { kPaperLiteralMax, kDualMin };
enum class Regime { kRateDominant, kLeakageDominant, kIntermediate };

std::string to_string(LpForm form);
std::string to_string(Regime regime);

inline constexpr double kActivityTolerance = 1e-9;
inline constexpr double kMultiplierZero = 1e-12;

struct LpProblem {
  double rate = 0.0;     // R
  double leakage = 0.0;  // Theta, same unit as R
  Eigen::VectorXd d;
  Eigen::VectorXd lam;
  double lam_max_perp_v = 0.0;
  double c_max = 0.0;

  std::size_t modes() const { return static_cast<std::size_t>(d.size()); }
};

struct LpSolution {
  double rho = 0.0;
  double nu = 0.0;
  double value = 0.0;
  Regime regime = Regime::kRateDominant;
  std::vector<std::size_t> active_modes;
  LpForm form = LpForm::kDualMin;
};

LpProblem build_lp(const PencilSpectrum& spec, double rate, double leakage);

// Same, from raw per-mode data.
LpProblem make_lp(Eigen::VectorXd d, Eigen::VectorXd lam, double lam_max_perp_v,
                  double rate, double leakage);

// Walks the boundary of the feasible region (kDualMin) or intersects the cap
// line with it (kPaperLiteralMax). Among optimal points the lexicographically
// smallest (rho, nu) is returned. kPaperLiteralMax throws InfeasibleLpError
// when no point satisfies every constraint.
LpSolution solve_lp(const LpProblem& lp, LpForm form = LpForm::kDualMin);

struct LpVertex {
  double rho = 0.0;
  double nu = 0.0;
  double value = 0.0;
};

struct VertexSearchResult {
  bool feasible = false;
  LpVertex best;
  std::vector<LpVertex> vertices;  // every feasible vertex found
};

// Reference solver: intersects every pair of constraint lines (axes, mode
// lines and, for kPaperLiteralMax, the cap), keeps the feasible points and
// picks the best with the same tie-break as solve_lp.
VertexSearchResult exhaustive_vertex_search(const LpProblem& lp, LpForm form);

// Sufficient condition for the capped LP to be feasible:
// lam_max_perp(V) R > Theta d_max, strictly.
bool feasibility_check(const PencilSpectrum& spec, double rate, double leakage);

struct RegimeReport {
  double c_rate = 0.0;      // min(lam_max_perp(V) R, C_max)
  double c_leakage = 0.0;   // min(d_max Theta, C_max)
  double c_inter = 0.0;     // -infinity when no interior vertex exists
  std::vector<LpVertex> interior_vertices;
  bool sufficient_feasibility = false;
  LpSolution dual_min;
  std::optional<LpSolution> paper_max;  // empty when the capped LP is infeasible
};

RegimeReport regime_report(const LpProblem& lp, const PencilSpectrum& spec);

double c_sic(const LpSolution& sol, double rate, double leakage);

// Closed form for the binary symmetric wiretap channel with uniform input:
// (1-2p)^2 R when (1-2q)^2 <= Theta/R, else (1-2p)^2/(1-2q)^2 Theta.
double bswc_c_sic(double p_bob, double q_eve, double rate, double leakage);

struct ModeResidual {
  std::size_t mode = 0;
  double d_v = 0.0;    // Rayleigh quotient of V along the mode
  double d_lam = 0.0;  // Rayleigh quotient of Lam along the mode
  double residual = 0.0;  // |d_v - rho - nu d_lam|
  bool active = false;
};

struct KktReport {
  std::vector<ModeResidual> modes;
  double max_active_residual = 0.0;
  bool passed = false;
};

// Checks (d_V)_j = rho* + nu* (d_Lam)_j on the active modes of a solution.
// Only meaningful when V and Lam commute; throws DomainError otherwise.
KktReport kkt_commuting_check(const PencilSpectrum& spec, const LpSolution& sol,
                              double tolerance = 1e-9);

struct ExactCapacity {
  double value = 0.0;
  double rho = 0.0;
  double nu = 0.0;
};

// Global optimum of the quadratic problem
//   max E[L'VL]  s.t.  E||L||^2 <= R,  E[L'Lam L] <= Theta,
// through its convex dual min_{nu >= 0} lam_max(V - nu Lam)_+ R + nu Theta on
// the perturbation subspace. Strong duality holds, so this is exact for any
// pair (V, Lam), commuting or not, and needs no positive-definite Lam.
ExactCapacity exact_quadratic_capacity(const EitSystem& sys, double rate, double leakage);

}  // namespace locsec

#endif  // LOCSEC_CAPACITY_H_
