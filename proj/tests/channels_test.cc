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

#include "locsec/channels.h"
#include "locsec/eit.h"
#include "locsec/errors.h"
#include "locsec/spectral.h"

namespace locsec {
namespace {

TEST(BscTest, Examples) {
  EXPECT_TRUE(bsc(0.0).entries().isApprox(Eigen::MatrixXd::Identity(2, 2)));
  EXPECT_TRUE((bsc(0.5).entries().array() == 0.5).all());
  const TransitionMatrix m = bsc(0.1);
  EXPECT_DOUBLE_EQ(m(0, 0), 0.9);
  EXPECT_DOUBLE_EQ(m(0, 1), 0.1);
  EXPECT_DOUBLE_EQ(m(1, 0), 0.1);
  EXPECT_DOUBLE_EQ(m(1, 1), 0.9);
  EXPECT_THROW(bsc(-0.1), ValidationError);
  EXPECT_THROW(bsc(1.5), ValidationError);
}

TEST(BswcTest, Examples) {
  const WiretapChannel wc = bswc(0.1, 0.25);
  EXPECT_NEAR(wc.py()[0], 0.5, 1e-15);
  EXPECT_NEAR(wc.pz()[1], 0.5, 1e-15);
  const WiretapChannel useless = bswc(0.0, 0.5);
  EXPECT_NEAR(mutual_information(useless.px(), useless.eve()), 0.0, 1e-15);
  EXPECT_NEAR(mutual_information(useless.px(), useless.bob(), LogBase::kBits), 1.0, 1e-15);
  EXPECT_NO_THROW(bswc(0.1, 0.45));
  EXPECT_THROW(bswc(0.1, 0.2, Pmf({1.0, 0.0})), DomainError);
  EXPECT_THROW(bswc(0.1, 0.2, Pmf({0.2, 0.3, 0.5})), DimensionError);
}

TEST(WiretapChannelTest, InputAlphabetsMustAgree) {
  EXPECT_THROW(WiretapChannel(Pmf({0.5, 0.5}), bsc(0.1),
                              TransitionMatrix(Eigen::MatrixXd::Constant(2, 3, 0.5))),
               DimensionError);
}

TEST(WiretapChannelTest, ZeroOutputMarginalRejected) {
  Eigen::MatrixXd dead(3, 2);
  dead << 0.5, 0.5, 0.5, 0.5, 0.0, 0.0;
  EXPECT_THROW(WiretapChannel(Pmf({0.5, 0.5}), TransitionMatrix(dead), bsc(0.1)), DomainError);
}

TEST(QuantizedAwgnTest, FivePointChannelHasFourDimensionalSubspace) {
  const WiretapChannel wc = quantized_awgn_wiretap(5, 5, 5, 6.0, 6.0, 1);
  EXPECT_EQ(wc.nx(), 5u);
  EXPECT_EQ(eit_system(wc).basis.cols(), 4);
  EXPECT_NEAR(wc.px()[2], 0.2, 1e-15);
}

TEST(QuantizedAwgnTest, TableChannelIsValid) {
  const WiretapChannel wc = quantized_awgn_wiretap(8, 8, 8, 8.0, 0.0, 7);
  EXPECT_TRUE(wc.py().is_strictly_interior());
  EXPECT_TRUE(wc.pz().is_strictly_interior());
}

TEST(QuantizedAwgnTest, Reproducible) {
  AwgnQuantizerOptions jitter;
  jitter.edge_jitter = 0.1;
  const WiretapChannel a = quantized_awgn_wiretap(4, 6, 5, 3.0, 1.0, 42, jitter);
  const WiretapChannel b = quantized_awgn_wiretap(4, 6, 5, 3.0, 1.0, 42, jitter);
  EXPECT_EQ(a.bob().entries(), b.bob().entries());
  EXPECT_EQ(a.eve().entries(), b.eve().entries());
  const WiretapChannel c = quantized_awgn_wiretap(4, 6, 5, 3.0, 1.0, 43, jitter);
  EXPECT_NE(a.bob().entries(), c.bob().entries());
  // Without jitter the seed is inert.
  EXPECT_EQ(quantized_awgn_wiretap(4, 6, 5, 3.0, 1.0, 1).bob().entries(),
            quantized_awgn_wiretap(4, 6, 5, 3.0, 1.0, 2).bob().entries());
}

TEST(QuantizedAwgnTest, CoarserEveQuantizerLeaksLess) {
  const WiretapChannel coarse = quantized_awgn_wiretap(8, 8, 2, 8.0, 0.0, 7);
  const WiretapChannel fine = quantized_awgn_wiretap(8, 8, 16, 8.0, 0.0, 7);
  EXPECT_LT(mutual_information(coarse.px(), coarse.eve()),
            mutual_information(fine.px(), fine.eve()));
}

TEST(QuantizedAwgnTest, RejectsDegenerateInputs) {
  EXPECT_THROW(quantized_awgn_wiretap(1, 4, 4, 3.0, 3.0, 1), ValidationError);
  EXPECT_THROW(quantized_awgn_wiretap(4, 4, 4, INFINITY, 3.0, 1), ValidationError);
}

TEST(QuantizedAwgnTest, GenericInstancesDoNotCommute) {
  for (std::size_t nx : {4, 5, 8}) {
    const WiretapChannel wc = quantized_awgn_wiretap(nx, nx, nx, 8.0, 0.0, 1);
    EXPECT_GT(commutator_norm(eit_system(wc)), 1e-6) << "nx=" << nx;
  }
}

TEST(QuantizedAwgnTest, ThreePointConstellationCommutes) {
  // The reflection x -> -x splits the two-dimensional subspace into
  // invariant lines shared by both forms.
  EXPECT_LT(commutator_norm(eit_system(quantized_awgn_wiretap(3, 3, 3, 8.0, 0.0, 1))), 1e-12);
}

TEST(BswcTest, UniformInputCommutes) {
  for (double p : {0.05, 0.2, 0.4}) {
    for (double q : {0.1, 0.3, 0.45}) {
      EXPECT_LT(commutator_norm(eit_system(bswc(p, q))), 1e-12);
    }
  }
}

TEST(SecrecyCapacityTest, Examples) {
  EXPECT_EQ(true_secrecy_capacity_bswc(0.2, 0.2), 0.0);
  EXPECT_NEAR(true_secrecy_capacity_bswc(0.0, 0.5, LogBase::kBits), 1.0, 1e-15);
  const auto hb = [](double p) { return -p * std::log2(p) - (1 - p) * std::log2(1 - p); };
  EXPECT_NEAR(true_secrecy_capacity_bswc(0.1, 0.45, LogBase::kBits), hb(0.45) - hb(0.1), 1e-14);
  EXPECT_NEAR(hb(0.45) - hb(0.1), 0.523778, 1e-5);
  EXPECT_EQ(true_secrecy_capacity_bswc(0.3, 0.1), 0.0);
}

}  // namespace
}  // namespace locsec
