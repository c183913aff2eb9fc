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
#include <random>

#include <gtest/gtest.h>

#include "locsec/errors.h"
#include "locsec/probability.h"

namespace locsec {
namespace {

TransitionMatrix Bsc(double c) {
  Eigen::MatrixXd m(2, 2);
  m << 1 - c, c, c, 1 - c;
  return TransitionMatrix(m);
}

Pmf RandomPmf(std::size_t n, std::mt19937_64& rng) {
  std::exponential_distribution<double> e(1.0);
  Eigen::VectorXd v(n);
  for (std::size_t i = 0; i < n; ++i) v(i) = e(rng) + 1e-3;
  return Pmf::renormalized(v);
}

TEST(PmfTest, RejectsNegativeAndUnnormalized) {
  EXPECT_THROW(Pmf({0.5, 0.6}), ValidationError);
  EXPECT_THROW(Pmf({1.2, -0.2}), ValidationError);
  EXPECT_THROW(Pmf(Eigen::VectorXd()), ValidationError);
  EXPECT_NO_THROW(Pmf({0.25, 0.75}));
}

TEST(PmfTest, InteriorFlagUsesFloor) {
  EXPECT_TRUE(Pmf({0.5, 0.5}).is_strictly_interior());
  EXPECT_FALSE(Pmf({1.0, 0.0}).is_strictly_interior());
  EXPECT_FALSE(Pmf({0.99, 0.01}).is_strictly_interior(0.05));
}

TEST(PmfTest, RenormalizedIsExplicit) {
  const Pmf p = Pmf::renormalized(Eigen::Vector2d(1.0, 3.0));
  EXPECT_DOUBLE_EQ(p[0], 0.25);
  EXPECT_DOUBLE_EQ(p[1], 0.75);
}

TEST(TransitionMatrixTest, ColumnsMustSumToOne) {
  Eigen::MatrixXd m(2, 2);
  m << 0.9, 0.2, 0.2, 0.8;
  EXPECT_THROW(TransitionMatrix{m}, ValidationError);
}

TEST(EntropyTest, Examples) {
  EXPECT_NEAR(entropy(Pmf({0.5, 0.5}), LogBase::kBits), 1.0, 1e-15);
  EXPECT_EQ(entropy(Pmf({1.0, 0.0}), LogBase::kBits), 0.0);
  // -0.1 log2 0.1 - 0.9 log2 0.9
  EXPECT_NEAR(entropy(Pmf({0.1, 0.9}), LogBase::kBits), 0.468996, 1e-6);
}

TEST(KlTest, Examples) {
  EXPECT_EQ(kl_divergence(Pmf({0.3, 0.7}), Pmf({0.3, 0.7})), 0.0);
  // 0.6 ln 1.2 + 0.4 ln 0.8
  EXPECT_NEAR(kl_divergence(Pmf({0.6, 0.4}), Pmf({0.5, 0.5})), 0.020136, 1e-6);
  EXPECT_NEAR(kl_divergence(Pmf({1.0, 0.0}), Pmf({0.5, 0.5}), LogBase::kBits), 1.0, 1e-15);
}

TEST(KlTest, SupportViolationIsDomainError) {
  EXPECT_THROW(kl_divergence(Pmf({0.5, 0.5}), Pmf({1.0, 0.0})), DomainError);
}

TEST(KlTest, NonNegativeWithEqualityOnlyAtIdentity) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 1000; ++i) {
    const Pmf q = RandomPmf(4, rng);
    const Pmf p = RandomPmf(4, rng);
    EXPECT_GT(kl_divergence(q, p), 0.0);
  }
}

TEST(ChiSquaredTest, Examples) {
  EXPECT_EQ(chi_squared(Pmf({0.2, 0.8}), Pmf({0.2, 0.8})), 0.0);
  EXPECT_NEAR(chi_squared(Pmf({0.6, 0.4}), Pmf({0.5, 0.5})), 0.04, 1e-15);
  EXPECT_NEAR(chi_squared(Pmf({0.25, 0.75}), Pmf({0.5, 0.5})), 0.25, 1e-15);
  EXPECT_THROW(chi_squared(Pmf({0.5, 0.5}), Pmf({1.0, 0.0})), DomainError);
}

TEST(ChiSquaredTest, LocalQuadraticSandwich) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 10000; ++i) {
    const std::size_t n = 2 + i % 5;
    const Pmf q = RandomPmf(n, rng);
    const Pmf p = RandomPmf(n, rng);
    const double kl = kl_divergence(q, p);
    const double chi = chi_squared(q, p);
    ASSERT_LE(p.min_entry() / 2 * chi, kl + 1e-15);
    ASSERT_LE(kl, chi + 1e-15);
  }
}

TEST(OutputMarginalTest, Examples) {
  const Pmf px({0.3, 0.7});
  const Pmf id = output_marginal(TransitionMatrix(Eigen::MatrixXd::Identity(2, 2)), px);
  EXPECT_DOUBLE_EQ(id[0], 0.3);
  const Pmf u = output_marginal(Bsc(0.1), Pmf({0.5, 0.5}));
  EXPECT_NEAR(u[0], 0.5, 1e-15);
  const Pmf skew = output_marginal(Bsc(0.1), Pmf({0.8, 0.2}));
  EXPECT_NEAR(skew[0], 0.74, 1e-15);  // 0.8 * 0.9 + 0.2 * 0.1
  EXPECT_NEAR(skew[1], 0.26, 1e-15);
  EXPECT_THROW(output_marginal(Bsc(0.1), Pmf({0.2, 0.3, 0.5})), DimensionError);
}

TEST(OutputMarginalTest, Linear) {
  std::mt19937_64 rng(3);
  Eigen::MatrixXd m(3, 4);
  for (int x = 0; x < 4; ++x) m.col(x) = RandomPmf(3, rng).probs();
  const TransitionMatrix ch(m);
  const Pmf a = RandomPmf(4, rng);
  const Pmf b = RandomPmf(4, rng);
  const double t = 0.3;
  const Pmf mix(t * a.probs() + (1 - t) * b.probs());
  const Eigen::VectorXd lhs = output_marginal(ch, mix).probs();
  const Eigen::VectorXd rhs =
      t * output_marginal(ch, a).probs() + (1 - t) * output_marginal(ch, b).probs();
  EXPECT_LE((lhs - rhs).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(MutualInformationTest, Examples) {
  EXPECT_NEAR(mutual_information(Pmf({0.5, 0.5}),
                                 TransitionMatrix(Eigen::MatrixXd::Identity(2, 2)), LogBase::kBits),
              1.0, 1e-15);
  EXPECT_NEAR(mutual_information(Pmf({0.3, 0.7}), Bsc(0.5)), 0.0, 1e-15);
  // 1 - h(0.1)
  const double expected = 1 + 0.1 * std::log2(0.1) + 0.9 * std::log2(0.9);
  EXPECT_NEAR(mutual_information(Pmf({0.5, 0.5}), Bsc(0.1), LogBase::kBits), expected, 1e-14);
  EXPECT_NEAR(expected, 0.531004, 1e-6);
}

TEST(MutualInformationTest, BoundedByEntropies) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 200; ++i) {
    Eigen::MatrixXd m(3, 4);
    for (int x = 0; x < 4; ++x) m.col(x) = RandomPmf(3, rng).probs();
    const TransitionMatrix ch(m);
    const Pmf px = RandomPmf(4, rng);
    const double mi = mutual_information(px, ch);
    EXPECT_GE(mi, 0.0);
    EXPECT_LE(mi, entropy(px) + 1e-12);
    EXPECT_LE(mi, entropy(output_marginal(ch, px)) + 1e-12);
  }
}

TEST(KlFromPerturbationTest, MatchesDirectKl) {
  const Eigen::Vector3d p(0.2, 0.3, 0.5);
  const Eigen::Vector3d delta(0.05, -0.08, 0.03);
  EXPECT_NEAR(detail::kl_from_perturbation(p, delta),
              kl_divergence(Pmf(p + delta), Pmf(p)), 1e-15);
  // Tiny perturbations keep relative precision: D ~ sum delta^2 / (2 p).
  const Eigen::Vector3d tiny = delta * 1e-7;
  const double quad = 0.5 * (tiny.array().square() / p.array()).sum();
  EXPECT_NEAR(detail::kl_from_perturbation(p, tiny) / quad, 1.0, 1e-6);
}

}  // namespace
}  // namespace locsec
