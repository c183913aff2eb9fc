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

// Validation protocols shared by the command-line front end and the
// acceptance suite. Each protocol runs one experiment, returns its data table
// and a pass/fail verdict against the documented tolerance.

#ifndef LOCSEC_PROTOCOLS_H_
#define LOCSEC_PROTOCOLS_H_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "locsec/channels.h"
#include "locsec/eit.h"
#include "locsec/table.h"

namespace locsec {

struct ProtocolResult {
  std::string name;
  bool passed = false;
  std::string detail;
  Table table;
  double seconds = 0.0;
};

// Dirichlet(1) channel legs and an interior input law, redrawn until every
// marginal clears 1e-3.
WiretapChannel random_wiretap(std::size_t nx, std::size_t ny, std::size_t nz,
                              std::mt19937_64& rng);

// Random consistent strategy with Gaussian directions in the perturbation
// subspace and Dirichlet message law, scaled so that max_valid_epsilon
// equals `reach` (in (0, 1]). Returned at epsilon = reach / 2.
PerturbationStrategy random_strategy(const EitSystem& sys, std::size_t card_u, double reach,
                                     std::mt19937_64& rng);

// Logarithmically spaced grid with `points` entries.
std::vector<double> log_grid(double lo, double hi, std::size_t points);

// Least-squares slope of log|y| against log x.
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

struct BswcClosedFormOptions {
  std::vector<double> crossovers = {0.05, 0.10, 0.15, 0.20, 0.25, 0.30, 0.35, 0.40, 0.45};
  std::vector<double> rates = {0.1, 0.5, 1.0};
  std::size_t ratio_points = 100;  // Theta/R = 0.01, 0.02, ..., 1.0
  double tolerance = 1e-12;
};
ProtocolResult bswc_closed_form(const BswcClosedFormOptions& options = {});

struct Table1Options {
  std::vector<std::size_t> input_sizes = {3, 5, 8};
  std::size_t channels_per_size = 7;
  double bob_snr_db = 8.0;
  std::vector<double> eve_snr_db = {-4.0, -2.0, 0.0, 2.0, 4.0, 6.0, 10.0};
  double rate = 1.0;
  std::vector<double> ratios = {1.0 / 7, 2.0 / 7, 3.0 / 7, 4.0 / 7,
                                5.0 / 7, 6.0 / 7, 1.0, 8.0 / 7};
  double edge_jitter = 0.05;
  std::uint64_t seed = 1;
  double tolerance = 1e-9;
  std::size_t workers = 0;
};
ProtocolResult table1(const Table1Options& options = {});

struct Table2Options {
  std::size_t nx = 8;
  double bob_snr_db = 8.0;
  double eve_snr_db = 0.0;
  std::uint64_t channel_seed = 7;
  double rate = 0.4;
  double leakage = 0.02;
  double epsilon = 0.1;
  std::size_t card_lo = 5;
  std::size_t card_hi = 12;
  std::size_t restarts = 8;
  std::uint64_t seed = 1;
  double max_spread = 0.05;
};
ProtocolResult table2(const Table2Options& options = {});

struct ConvergenceOptions {
  std::size_t pairs = 50;
  std::size_t eps_points = 8;
  double eps_lo = 1e-3;
  double eps_hi = 5e-2;
  double min_slope = 2.8;
  std::uint64_t seed = 11;
};
ProtocolResult convergence_order(const ConvergenceOptions& options = {});

struct DtmOptions {
  std::size_t channels = 100;
  std::uint64_t seed = 5;
};
ProtocolResult dtm_invariants(const DtmOptions& options = {});

struct ContractionOptions {
  std::vector<double> crossovers = {0.05, 0.10, 0.15, 0.20, 0.25, 0.30, 0.35, 0.40, 0.45};
  std::size_t random_channels = 10;
  std::size_t samples = 10000;
  std::uint64_t seed = 3;
};
ProtocolResult contraction(const ContractionOptions& options = {});

struct SandwichOptions {
  std::vector<double> bob = {0.0, 0.1, 0.2, 0.3, 0.4};
  std::vector<double> eve = {0.1, 0.25, 0.4};
  std::size_t ternary_channels = 3;
  std::size_t samples = 10000;
  std::vector<double> eps_grid = {1e-3, 2e-3, 5e-3, 1e-2, 2e-2, 5e-2};
  double slack = 1e-3;
  std::uint64_t seed = 9;
  std::size_t workers = 0;
};
ProtocolResult sandwich(const SandwichOptions& options = {});

struct IbOptionsProtocol {
  double crossover = 0.1;
  std::vector<double> betas = {1.0,  1.4,  1.5,  1.57, 1.58, 1.6,  1.65, 1.7,  1.8, 2.0,
                               2.5,  3.0,  4.0,  6.0,  10.0, 20.0, 50.0, 100.0, 400.0};
  std::size_t card_u = 2;
  std::uint64_t seed = 1;
  double saturation_tolerance_bits = 1e-3;
  double slope_tolerance = 0.01;
  std::size_t workers = 0;
};
ProtocolResult information_bottleneck(const IbOptionsProtocol& options = {});

struct RegimeOptions {
  std::vector<std::pair<double, double>> channels = {
      {0.1, 0.25}, {0.05, 0.3}, {0.2, 0.4}, {0.1, 0.45}, {0.3, 0.35}};
  double rate = 0.5;
  double tolerance = 1e-6;
  double knee_tolerance = 1e-9;
};
ProtocolResult regimes(const RegimeOptions& options = {});

struct PerfectSecrecyOptions {
  std::vector<double> crossovers = {0.05, 0.10, 0.15, 0.20, 0.25, 0.30, 0.35, 0.40, 0.45};
  double rate = 0.5;
  double leakage = 1e-12;
  double bound = 1e-10;
};
ProtocolResult perfect_secrecy(const PerfectSecrecyOptions& options = {});

struct KktOptions {
  std::vector<double> eve = {0.1, 0.25, 0.4};
  std::size_t bob_points = 46;  // p_bob = 0, 0.01, ..., 0.45
  std::vector<std::pair<double, double>> budgets = {{1.0, 0.1}, {0.5, 0.05}, {0.5, 0.2}};
  double tolerance = 1e-9;
};
ProtocolResult kkt(const KktOptions& options = {});

struct EveQuantizationOptions {
  std::size_t nx = 8;
  std::size_t ny = 8;
  std::vector<std::size_t> eve_sizes = {2, 4, 8, 16};
  double bob_snr_db = 8.0;
  double eve_snr_db = 0.0;
  std::uint64_t seed = 7;
  double rate = 0.5;
  double leakage = 0.1;
  double tolerance = 1e-12;
};
ProtocolResult eve_quantization(const EveQuantizationOptions& options = {});

}  // namespace locsec

#endif  // LOCSEC_PROTOCOLS_H_
