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

// Exact-information oracles and reference algorithms: exact mutual
// informations of concrete strategies, the Blahut-Arimoto information
// bottleneck, and sampled bounds on the global contraction coefficient.

#ifndef LOCSEC_BASELINES_H_
#define LOCSEC_BASELINES_H_

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "locsec/channels.h"
#include "locsec/eit.h"
#include "locsec/probability.h"

namespace locsec {

struct StrategyInformation {
  double iux = 0.0;
  double iuy = 0.0;
  double iuz = 0.0;
};

// Exact I(U;X), I(U;Y), I(U;Z) in nats for the joint law
// P_U(u) P_{X|U=u} P_{YZ|X}.
StrategyInformation exact_strategy_mi(const WiretapChannel& wc,
                                      const PerturbationStrategy& s);

struct IbCurvePoint {
  double rate = 0.0;     // I(U;X)
  double utility = 0.0;  // I(U;Y)
  double beta = 0.0;
  bool converged = false;
};

struct IbOptions {
  std::size_t card_u = 2;
  std::uint64_t seed = 1;
  double tolerance = 1e-12;
  std::size_t max_iters = 20000;
  std::size_t restarts = 4;
};

// Self-consistent fixed points of min I(U;X) - beta I(U;Y), one per beta,
// sorted by rate. Values in nats.
std::vector<IbCurvePoint> blahut_arimoto_ib(const Pmf& px, const TransitionMatrix& ch,
                                            const std::vector<double>& betas,
                                            const IbOptions& options = {});

struct ContractionEstimate {
  double max_ratio = 0.0;    // certified lower bound on the global coefficient
  double eta_loc = 0.0;
  double upper_bound = 0.0;  // (2 / P_min) eta_loc
  std::vector<double> ratios;
  std::vector<double> epsilons;
};

// Exact I(U;Y)/I(U;Z) over random antipodal strategies plus the principal
// pencil mode (sample 0, at the smallest epsilon).
ContractionEstimate mc_global_contraction(const WiretapChannel& wc,
                                          std::size_t samples,
                                          const std::vector<double>& eps_grid,
                                          std::uint64_t seed);

struct UtilityLeakageSample {
  double leakage = 0.0;  // L' Lam L
  double utility = 0.0;  // L' V L
};

struct UtilityLeakageSamples {
  std::vector<UtilityLeakageSample> points;  // point 0 is the principal mode
  double eta_loc = 0.0;
};

// Unit directions in the perturbation subspace and their quadratic
// utility/leakage energies.
UtilityLeakageSamples utility_leakage_samples(const EitSystem& sys, std::size_t n,
                                              std::uint64_t seed);

}  // namespace locsec

#endif  // LOCSEC_BASELINES_H_
