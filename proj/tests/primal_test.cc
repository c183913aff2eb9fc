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

#include <cmath>

#include <gtest/gtest.h>

#include "locsec/capacity.h"
#include "locsec/channels.h"
#include "locsec/errors.h"
#include "locsec/primal.h"
#include "locsec/spectral.h"

namespace locsec {
namespace {

TEST(PrimalTest, BswcRateBoundOptimumIsAntipodalTau) {
  const EitSystem sys = eit_system(bswc(0.1, 0.25));
  const PrimalResult r = optimize_primal(sys, 1.0, 10.0);
  EXPECT_NEAR(r.objective, 0.64, 1e-6);
  EXPECT_NEAR(r.rate_used, 1.0, 1e-6);
  const Eigen::MatrixXd& l = r.strategy.l();
  ASSERT_EQ(l.cols(), 2);
  EXPECT_LE((l.col(0) + l.col(1)).norm(), 1e-6);
  const Eigen::Vector2d tau(1 / std::sqrt(2.0), -1 / std::sqrt(2.0));
  EXPECT_NEAR(std::abs(l.col(0).dot(tau)), 1.0, 1e-6);
}

TEST(PrimalTest, VanishingBudgetsGiveVanishingObjective) {
  const EitSystem sys = eit_system(quantized_awgn_wiretap(5, 5, 5, 6.0, 2.0, 1));
  PrimalOptions opts;
  opts.restarts = 2;
  EXPECT_LT(optimize_primal(sys, 1e-10, 1e-11, opts).objective, 1e-9);
}

TEST(PrimalTest, RespectsBudgetsAndStaysBelowExactOptimum) {
  const EitSystem sys = eit_system(quantized_awgn_wiretap(5, 5, 5, 6.0, 2.0, 1));
  PrimalOptions opts;
  opts.card_u = 3;
  opts.restarts = 4;
  for (double theta : {0.02, 0.1}) {
    const PrimalResult r = optimize_primal(sys, 0.4, theta, opts);
    EXPECT_LE(r.rate_used, 0.4 * (1 + 1e-6));
    EXPECT_LE(r.leakage_used, theta * (1 + 1e-6));
    const double exact = exact_quadratic_capacity(sys, 0.4, theta).value;
    EXPECT_LE(r.objective, exact * (1 + 1e-9));
    EXPECT_GE(r.objective, 0.98 * exact);
  }
}

TEST(PrimalTest, RejectsBadInputs) {
  const EitSystem sys = eit_system(bswc(0.1, 0.25));
  PrimalOptions opts;
  opts.card_u = 1;
  EXPECT_THROW(optimize_primal(sys, 1.0, 0.1, opts), DomainError);
  EXPECT_THROW(optimize_primal(sys, 0.0, 0.1), DomainError);
}

TEST(PrimalTest, KktAlignmentOnCommutingChannel) {
  const EitSystem sys = eit_system(bswc(0.2, 0.3));
  for (double theta : {0.05, 0.5}) {
    const PrimalResult r = optimize_primal(sys, 1.0, theta);
    EXPECT_LT(kkt_alignment_residual(r, sys), 1e-6) << "theta=" << theta;
  }
}

TEST(PuInvarianceTest, BswcColumnIsFlat) {
  const EitSystem sys = eit_system(bswc(0.1, 0.25));
  PrimalOptions opts;
  opts.restarts = 4;
  const auto rows = pu_invariance_sweep(sys, 0.5, 0.05, 0.1, 2, 6, opts);
  ASSERT_EQ(rows.size(), 5u);
  for (const auto& row : rows) {
    EXPECT_NEAR(row.primal, rows.front().primal, 1e-6);
    EXPECT_NEAR(row.dual_min, 0.128, 1e-12);
    EXPECT_LE(row.primal, row.dual_min * (1 + 1e-9));
  }
  EXPECT_NEAR(rows.front().primal, 0.128, 1e-6);
}

TEST(AchievedRatioTest, PrincipalModeAttainsEta) {
  const WiretapChannel wc = quantized_awgn_wiretap(5, 5, 5, 6.0, 2.0, 1);
  const EitSystem sys = eit_system(wc);
  const PencilSpectrum spec = pencil_spectrum(sys);
  Eigen::MatrixXd l(5, 2);
  l.col(0) = spec.modes.col(0);
  l.col(1) = -spec.modes.col(0);
  const PerturbationStrategy s(wc.px(), Pmf::uniform(2), l, 0.5 * max_valid_epsilon(wc.px(), l));
  EXPECT_NEAR(achieved_ratio(s, sys), eta_loc_sec(sys), 1e-9);
}

TEST(AchievedRatioTest, BswcRatioIsFixed) {
  const WiretapChannel wc = bswc(0.1, 0.25);
  const EitSystem sys = eit_system(wc);
  Eigen::MatrixXd l(2, 2);
  l << 0.3, -0.3, -0.3, 0.3;
  const PerturbationStrategy s(wc.px(), Pmf::uniform(2), l, 0.5);
  EXPECT_NEAR(achieved_ratio(s, sys), 0.64 / 0.25, 1e-12);
}

TEST(AchievedRatioTest, ZeroLeakageIsDomainError) {
  const WiretapChannel wc = bswc(0.1, 0.25);
  const PerturbationStrategy s(wc.px(), Pmf::uniform(2), Eigen::MatrixXd::Zero(2, 2), 0.5);
  EXPECT_THROW(achieved_ratio(s, eit_system(wc)), DomainError);
}

TEST(AchievedRatioTest, RateStarvedSolutionFallsShortOfEta) {
  const EitSystem sys = eit_system(quantized_awgn_wiretap(6, 6, 6, 8.0, 0.0, 3));
  PrimalOptions opts;
  opts.restarts = 4;
  const PrimalResult r = optimize_primal(sys, 0.1, 1.0, opts);
  EXPECT_LT(achieved_ratio(r.strategy, sys), 0.99 * eta_loc_sec(sys));
}

}  // namespace
}  // namespace locsec
