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

// Direct optimizer for the quadratic secrecy problem
//
//   maximize   sum_u P_U(u) L_u' V L_u
//   subject to sum_u P_U(u) ||L_u||^2     <= R'
//              sum_u P_U(u) L_u' Lam L_u  <= Theta'
//              L_u' sqrt(P_X) = 0,  sum_u P_U(u) L_u = 0,
//
// with scaled budgets R' = 2R/eps^2 and Theta' = 2Theta/eps^2. Maximizing a
// convex quadratic is non-convex, so the solver runs multi-start projected
// gradient ascent and reports the best local maximum it finds.

#ifndef LOCSEC_PRIMAL_H_
#define LOCSEC_PRIMAL_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "locsec/eit.h"

namespace locsec {

struct PrimalOptions {
  std::size_t card_u = 2;
  std::uint64_t seed = 1;
  std::size_t restarts = 8;
  std::size_t max_iters = 5000;
  // Gradient step as a fraction of 1 / lam_max_perp(V).
  double step = 1e-2;
  // Stop once the objective gains less than this (relative) over `window`
  // iterations.
  double tolerance = 1e-12;
  std::size_t window = 50;
  // Exponentiated-gradient updates of P_U alongside L. Off: P_U stays
  // uniform over card_u messages.
  bool optimize_pu = false;
};

struct PrimalResult {
  PerturbationStrategy strategy;
  double objective = 0.0;     // sum_u P_U L_u' V L_u
  double rate_used = 0.0;     // sum_u P_U ||L_u||^2
  double leakage_used = 0.0;  // sum_u P_U L_u' Lam L_u
  bool converged = false;
  std::size_t iterations = 0;  // of the winning restart
  // Multipliers of the final projection step, estimates of (rho*, nu*).
  double rho_hat = 0.0;
  double nu_hat = 0.0;
};

// Throws DomainError for card_u < 2 or non-positive budgets. The strategy's
// epsilon is set to min(0.5, max_valid_epsilon / 2).
PrimalResult optimize_primal(const EitSystem& sys, double rate_budget,
                             double leakage_budget, const PrimalOptions& options = {});

// max_u ||(-V + rho I + nu Lam) L_u|| / ||L_u|| over non-zero columns.
double kkt_alignment_residual(const PrimalResult& result, const EitSystem& sys);

struct PuInvarianceRow {
  std::size_t card_u = 0;
  double primal = 0.0;     // eps^2/2 * objective, same unit as R
  double dual_min = 0.0;   // DualMin LP value at (R, Theta); NaN if singular
  double paper_max = 0.0;  // capped LP value; NaN if singular or infeasible
  double rate_used = 0.0;
  double leakage_used = 0.0;
};

// One primal solve per message cardinality in [card_lo, card_hi], next to
// the (cardinality-free) LP values.
std::vector<PuInvarianceRow> pu_invariance_sweep(const EitSystem& sys, double rate,
                                                 double leakage, double epsilon,
                                                 std::size_t card_lo, std::size_t card_hi,
                                                 const PrimalOptions& base = {});

// (sum P_U L'VL) / (sum P_U L' Lam L). DomainError when the leakage energy
// is <= 1e-12.
double achieved_ratio(const PerturbationStrategy& strategy, const EitSystem& sys);

}  // namespace locsec

#endif  // LOCSEC_PRIMAL_H_
