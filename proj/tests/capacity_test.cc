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

#include <algorithm>
#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "locsec/capacity.h"
#include "locsec/channels.h"
#include "locsec/errors.h"

namespace locsec {
namespace {

PencilSpectrum BswcSpectrum(double p, double q) { return pencil_spectrum(eit_system(bswc(p, q))); }

TEST(BuildLpTest, BswcSingleConstraint) {
  const LpProblem lp = build_lp(BswcSpectrum(0.1, 0.25), 0.5, 0.05);
  ASSERT_EQ(lp.modes(), 1u);
  EXPECT_NEAR(lp.lam(0), 0.25, 1e-12);
  EXPECT_NEAR(lp.d(0) * lp.lam(0), 0.64, 1e-12);
  EXPECT_NEAR(lp.c_max, 0.32, 1e-12);
}

TEST(BuildLpTest, ScalingRateScalesCap) {
  const PencilSpectrum spec = BswcSpectrum(0.1, 0.25);
  const LpProblem a = build_lp(spec, 0.5, 0.05);
  const LpProblem b = build_lp(spec, 1.5, 0.05);
  EXPECT_NEAR(b.c_max, 3.0 * a.c_max, 1e-15);
  EXPECT_EQ(a.d, b.d);
  EXPECT_EQ(a.lam, b.lam);
}

TEST(BuildLpTest, FiveSymbolChannelHasFourConstraints) {
  const PencilSpectrum spec = pencil_spectrum(eit_system(quantized_awgn_wiretap(5, 5, 5, 6.0, 6.0, 1)));
  EXPECT_EQ(build_lp(spec, 1.0, 0.1).modes(), 4u);
}

TEST(BuildLpTest, RejectsNonPositiveBudgets) {
  const PencilSpectrum spec = BswcSpectrum(0.1, 0.25);
  EXPECT_THROW(build_lp(spec, 0.0, 0.1), DomainError);
  EXPECT_THROW(build_lp(spec, 1.0, -0.1), DomainError);
}

TEST(SolveLpTest, DualMinLeakageBranch) {
  const LpSolution s = solve_lp(build_lp(BswcSpectrum(0.1, 0.25), 0.5, 0.05));
  EXPECT_NEAR(s.rho, 0.0, 1e-12);
  EXPECT_NEAR(s.nu, 2.56, 1e-12);
  EXPECT_NEAR(s.value, 0.128, 1e-12);
  EXPECT_EQ(s.regime, Regime::kLeakageDominant);
}

TEST(SolveLpTest, DualMinRateBranch) {
  const LpSolution s = solve_lp(build_lp(BswcSpectrum(0.1, 0.25), 0.5, 0.2));
  EXPECT_NEAR(s.rho, 0.64, 1e-12);
  EXPECT_NEAR(s.nu, 0.0, 1e-12);
  EXPECT_NEAR(s.value, 0.32, 1e-12);
  EXPECT_EQ(s.regime, Regime::kRateDominant);
}

TEST(SolveLpTest, TieBreaksToSmallerRho) {
  // lam_1 = Theta / R: both axis vertices reach 0.64.
  const LpProblem lp = make_lp(Eigen::VectorXd::Constant(1, 2.56), Eigen::VectorXd::Constant(1, 0.25),
                               0.64, 1.0, 0.25);
  const LpSolution s = solve_lp(lp);
  EXPECT_NEAR(s.value, 0.64, 1e-12);
  EXPECT_EQ(s.rho, 0.0);
  EXPECT_NEAR(s.nu, 2.56, 1e-12);
}

TEST(SolveLpTest, PaperLiteralMaxReachesCap) {
  const LpSolution s = solve_lp(build_lp(BswcSpectrum(0.1, 0.25), 0.5, 0.05), LpForm::kPaperLiteralMax);
  EXPECT_NEAR(s.value, 0.32, 1e-12);
}

TEST(SolveLpTest, MatchesVertexSearchOnRandomChannels) {
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const std::size_t nx = 3 + seed % 6;
    AwgnQuantizerOptions jitter;
    jitter.edge_jitter = 0.1;
    const WiretapChannel wc =
        quantized_awgn_wiretap(nx, nx, nx, 8.0, -4.0 + 0.1 * static_cast<double>(seed), seed, jitter);
    const PencilSpectrum spec = pencil_spectrum(eit_system(wc));
    for (double ratio : {0.01, 0.1, 0.3, 0.7, 1.2}) {
      const LpProblem lp = build_lp(spec, 1.0, ratio);
      for (LpForm form : {LpForm::kDualMin, LpForm::kPaperLiteralMax}) {
        const VertexSearchResult oracle = exhaustive_vertex_search(lp, form);
        ASSERT_TRUE(oracle.feasible);
        const LpSolution s = solve_lp(lp, form);
        ASSERT_NEAR(s.value, oracle.best.value, 1e-9) << "seed " << seed;
        ++checked;
      }
    }
  }
  EXPECT_EQ(checked, 1000);
}

TEST(FeasibilityTest, Examples) {
  const PencilSpectrum spec = BswcSpectrum(0.1, 0.25);
  EXPECT_TRUE(feasibility_check(spec, 0.5, 0.05));
  // Theta / R = lam_max / d_max exactly.
  EXPECT_FALSE(feasibility_check(spec, 1.0, 0.25));
  EXPECT_FALSE(feasibility_check(spec, 1.0, 0.5));
}

TEST(RegimeReportTest, SingleModeHasNoInteriorVertex) {
  const PencilSpectrum spec = BswcSpectrum(0.1, 0.25);
  const RegimeReport r = regime_report(build_lp(spec, 0.5, 0.05), spec);
  EXPECT_TRUE(r.interior_vertices.empty());
  EXPECT_EQ(r.c_inter, -std::numeric_limits<double>::infinity());
  EXPECT_NEAR(r.c_rate, 0.32, 1e-12);
  EXPECT_NEAR(r.c_leakage, 0.128, 1e-12);
  EXPECT_TRUE(r.paper_max.has_value());
}

TEST(RegimeReportTest, CrossingLinesGiveFeasibleInteriorVertex) {
  // rho + 0.1 nu >= 0.4 and rho + 0.5 nu >= 0.75 cross at (0.3125, 0.875);
  // the first also meets the cap rho + 0.3 nu = 0.9 at (0.15, 2.5).
  const LpProblem lp = make_lp(Eigen::Vector2d(4.0, 1.5), Eigen::Vector2d(0.1, 0.5), 0.9, 1.0, 0.3);
  const RegimeReport r = regime_report(lp, BswcSpectrum(0.1, 0.25));
  ASSERT_EQ(r.interior_vertices.size(), 2u);
  bool crossing = false;
  for (const LpVertex& v : r.interior_vertices) {
    crossing |= std::abs(v.rho - 0.3125) < 1e-12 && std::abs(v.nu - 0.875) < 1e-12;
    for (Eigen::Index j = 0; j < 2; ++j) {
      EXPECT_GE(v.rho + lp.lam(j) * v.nu, lp.lam(j) * lp.d(j) - 1e-12);
    }
    EXPECT_LE(v.value, lp.c_max + 1e-12);
  }
  EXPECT_TRUE(crossing);
  EXPECT_NEAR(r.c_inter, 0.9, 1e-12);
}

TEST(RegimeReportTest, NormalizedCapacityIsRampThenFlat) {
  const PencilSpectrum spec = BswcSpectrum(0.1, 0.25);
  double prev = 0.0;
  for (int k = 1; k <= 40; ++k) {
    const double ratio = 0.01 * k;
    const double normalized = solve_lp(build_lp(spec, 1.0, ratio)).value;
    EXPECT_NEAR(normalized, std::min(2.56 * ratio, 0.64), 1e-12);
    EXPECT_GE(normalized, prev - 1e-15);
    prev = normalized;
  }
}

TEST(CSicTest, Examples) {
  LpSolution s;
  s.nu = 2.56;
  EXPECT_NEAR(c_sic(s, 0.5, 0.05), 0.128, 1e-15);
  s.rho = 0.64;
  s.nu = 0.0;
  EXPECT_NEAR(c_sic(s, 0.5, 0.05), 0.32, 1e-15);
  EXPECT_EQ(c_sic(LpSolution{}, 0.5, 0.05), 0.0);
}

TEST(BswcCSicTest, Examples) {
  EXPECT_NEAR(bswc_c_sic(0.1, 0.25, 0.5, 0.05), 0.128, 1e-12);
  for (double theta : {0.0, 0.01, 1.0}) EXPECT_NEAR(bswc_c_sic(0.1, 0.5, 0.5, theta), 0.32, 1e-12);
  EXPECT_EQ(bswc_c_sic(0.5, 0.25, 0.5, 0.05), 0.0);
  EXPECT_EQ(bswc_c_sic(0.5, 0.25, 0.5, 0.2), 0.0);
  EXPECT_THROW(bswc_c_sic(1.1, 0.25, 0.5, 0.05), ValidationError);
}

TEST(BswcCSicTest, MatchesGenericSolver) {
  for (double p : {0.0, 0.1, 0.2, 0.3, 0.4}) {
    for (double q : {0.1, 0.25, 0.4}) {
      const PencilSpectrum spec = BswcSpectrum(p, q);
      for (double theta : {0.01, 0.1, 0.3}) {
        EXPECT_NEAR(solve_lp(build_lp(spec, 0.5, theta)).value, bswc_c_sic(p, q, 0.5, theta), 1e-12);
      }
    }
  }
}

TEST(CSicTest, NonDecreasingInBothBudgets) {
  const PencilSpectrum spec = pencil_spectrum(eit_system(quantized_awgn_wiretap(6, 6, 6, 8.0, 0.0, 3)));
  for (double r = 0.1; r < 2.0; r += 0.1) {
    for (double t = 0.01; t < 0.5; t += 0.02) {
      const double base = solve_lp(build_lp(spec, r, t)).value;
      EXPECT_GE(solve_lp(build_lp(spec, r + 0.1, t)).value, base - 1e-12);
      EXPECT_GE(solve_lp(build_lp(spec, r, t + 0.02)).value, base - 1e-12);
    }
  }
}

TEST(CSicTest, PerfectSecrecyLimit) {
  // Eve informative: capacity vanishes with the leakage budget.
  EXPECT_LT(bswc_c_sic(0.1, 0.25, 0.5, 1e-12), 1e-10);
  const PencilSpectrum spec = BswcSpectrum(0.1, 0.25);
  EXPECT_LT(solve_lp(build_lp(spec, 0.5, 1e-12)).value, 1e-10);
  // Eve useless: capacity is lam_V R for every budget.
  EXPECT_NEAR(exact_quadratic_capacity(eit_system(bswc(0.1, 0.5)), 0.5, 1e-12).value, 0.32, 1e-12);
}

TEST(KktTest, BswcExamples) {
  const PencilSpectrum spec = BswcSpectrum(0.1, 0.25);
  const LpSolution leak = solve_lp(build_lp(spec, 0.5, 0.05));
  const KktReport a = kkt_commuting_check(spec, leak);
  EXPECT_TRUE(a.passed);
  EXPECT_LT(a.max_active_residual, 1e-12);
  const LpSolution rate = solve_lp(build_lp(spec, 0.5, 0.2));
  EXPECT_TRUE(kkt_commuting_check(spec, rate).passed);
  LpSolution bumped = leak;
  bumped.rho += 0.01;
  const KktReport b = kkt_commuting_check(spec, bumped);
  EXPECT_FALSE(b.passed);
  EXPECT_NEAR(b.max_active_residual, 0.01, 1e-12);
}

TEST(KktTest, RefusesNonCommutingSystem) {
  const PencilSpectrum spec = pencil_spectrum(eit_system(quantized_awgn_wiretap(5, 5, 5, 6.0, 2.0, 1)));
  EXPECT_THROW(kkt_commuting_check(spec, solve_lp(build_lp(spec, 1.0, 0.1))), DomainError);
}

TEST(ExactCapacityTest, MatchesDualMinOnCommutingChannels) {
  for (double p : {0.05, 0.2, 0.35}) {
    for (double q : {0.1, 0.3}) {
      const EitSystem sys = eit_system(bswc(p, q));
      for (double theta : {0.01, 0.05, 0.2}) {
        const double lp = solve_lp(build_lp(pencil_spectrum(sys), 0.5, theta)).value;
        EXPECT_NEAR(exact_quadratic_capacity(sys, 0.5, theta).value, lp, 1e-9);
      }
    }
  }
}

TEST(ExactCapacityTest, BoundedByRateCapAndLeakageRamp) {
  const EitSystem sys = eit_system(quantized_awgn_wiretap(8, 8, 8, 8.0, 0.0, 7));
  const PencilSpectrum spec = pencil_spectrum(sys);
  for (double theta : {0.005, 0.02, 0.1, 0.3}) {
    const double exact = exact_quadratic_capacity(sys, 0.4, theta).value;
    EXPECT_LE(exact, spec.lam_max_perp_v * 0.4 * (1 + 1e-12));
    EXPECT_LE(exact, spec.d_max() * theta * (1 + 1e-12));
  }
  EXPECT_THROW(exact_quadratic_capacity(sys, 0.4, 0.0), DomainError);
}

}  // namespace
}  // namespace locsec
