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

#include "locsec/channels.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "locsec/errors.h"

namespace locsec {

namespace {

void check_crossover(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream msg;
    msg << name << " = " << p << " is outside [0, 1]";
    throw ValidationError(msg.str());
  }
}

// P(lo < a + sigma N < hi), computed from the tail nearer to the mean so
// that far bins keep relative accuracy.
double gaussian_mass(double lo, double hi, double mean, double sigma) {
  const double s = sigma * std::numbers::sqrt2;
  const double zl = (lo - mean) / s;
  const double zh = (hi - mean) / s;
  if (zl >= 0.0) return 0.5 * (std::erfc(zl) - std::erfc(zh));
  if (zh <= 0.0) return 0.5 * (std::erfc(-zh) - std::erfc(-zl));
  return 1.0 - 0.5 * (std::erfc(-zl) + std::erfc(zh));
}

}  // namespace

WiretapChannel::WiretapChannel(Pmf px, TransitionMatrix bob,
                               TransitionMatrix eve)
    : px_(std::move(px)),
      bob_(std::move(bob)),
      eve_(std::move(eve)),
      py_(output_marginal(bob_, px_)),
      pz_(output_marginal(eve_, px_)) {
  if (bob_.inputs() != eve_.inputs()) {
    throw DimensionError("WiretapChannel: Bob and Eve legs take different input alphabets");
  }
  if (!px_.is_strictly_interior()) {
    throw DomainError("WiretapChannel: reference input law must be strictly positive");
  }
  if (!py_.is_strictly_interior()) {
    throw DomainError("WiretapChannel: Bob's output marginal has a zero entry");
  }
  if (!pz_.is_strictly_interior()) {
    throw DomainError("WiretapChannel: Eve's output marginal has a zero entry");
  }
}

TransitionMatrix bsc(double crossover) {
  check_crossover(crossover, "bsc crossover");
  Eigen::MatrixXd m(2, 2);
  m << 1.0 - crossover, crossover, crossover, 1.0 - crossover;
  return TransitionMatrix(std::move(m));
}

WiretapChannel bswc(double p_bob, double q_eve, std::optional<Pmf> px) {
  Pmf input = px ? *px : Pmf::uniform(2);
  if (input.size() != 2) throw DimensionError("bswc: input law must be binary");
  return WiretapChannel(std::move(input), bsc(p_bob), bsc(q_eve));
}

TransitionMatrix quantized_awgn_leg(std::size_t nx, std::size_t n_out,
                                    double ebn0_db, std::uint64_t rng_seed,
                                    const AwgnQuantizerOptions& options) {
  if (nx < 2 || n_out < 2) {
    throw ValidationError("quantized_awgn: alphabets need at least two symbols");
  }
  if (!std::isfinite(ebn0_db)) throw ValidationError("quantized_awgn: SNR must be finite");

  const auto m = static_cast<double>(nx);
  const double energy = (m * m - 1.0) / 3.0;
  std::vector<double> points(nx);
  for (std::size_t k = 0; k < nx; ++k) {
    points[k] = (2.0 * static_cast<double>(k) - (m - 1.0)) / std::sqrt(energy);
  }
  const double eb = 1.0 / std::log2(m);
  const double n0 = eb / std::pow(10.0, ebn0_db / 10.0);
  const double sigma = std::sqrt(n0 / 2.0);

  const double span = points.back() + 3.0 * sigma;
  const double width = 2.0 * span / static_cast<double>(n_out);
  std::vector<double> edges(n_out + 1);
  edges.front() = -std::numeric_limits<double>::infinity();
  edges.back() = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < n_out; ++k) {
    edges[k] = -span + width * static_cast<double>(k);
  }
  if (options.edge_jitter > 0.0) {
    std::mt19937_64 rng(rng_seed);
    std::uniform_real_distribution<double> shift(-options.edge_jitter,
                                                 options.edge_jitter);
    for (std::size_t k = 1; k < n_out; ++k) edges[k] += shift(rng) * width;
    std::sort(edges.begin() + 1, edges.end() - 1);
  }

  Eigen::MatrixXd law(static_cast<Eigen::Index>(n_out), static_cast<Eigen::Index>(nx));
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t y = 0; y < n_out; ++y) {
      law(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(x)) =
          std::max(gaussian_mass(edges[y], edges[y + 1], points[x], sigma),
                   options.probability_floor);
    }
    auto col = law.col(static_cast<Eigen::Index>(x));
    col /= col.sum();
  }
  return TransitionMatrix(std::move(law));
}

WiretapChannel quantized_awgn_wiretap(std::size_t nx, std::size_t ny,
                                      std::size_t nz, double ebn0_bob_db,
                                      double ebn0_eve_db, std::uint64_t rng_seed,
                                      const AwgnQuantizerOptions& options) {
  TransitionMatrix bob = quantized_awgn_leg(nx, ny, ebn0_bob_db, rng_seed, options);
  TransitionMatrix eve =
      quantized_awgn_leg(nx, nz, ebn0_eve_db, rng_seed ^ 0x9e3779b97f4a7c15ULL, options);
  Pmf px = Pmf::uniform(nx);
  for (const auto* leg : {&bob, &eve}) {
    const Eigen::VectorXd marginal = leg->entries() * px.probs();
    Eigen::Index bin = 0;
    if (marginal.minCoeff(&bin) < kInteriorFloor) {
      std::ostringstream msg;
      msg << "quantized_awgn_wiretap: " << (leg == &bob ? "Bob" : "Eve")
          << " bin " << bin << " has mass " << marginal(bin)
          << " under the uniform input; use fewer bins or a higher floor";
      throw ValidationError(msg.str());
    }
  }
  return WiretapChannel(std::move(px), std::move(bob), std::move(eve));
}

double binary_entropy(double p, LogBase base) {
  check_crossover(p, "binary_entropy argument");
  double h = 0.0;
  if (p > 0.0) h -= p * std::log(p);
  if (p < 1.0) h -= (1.0 - p) * std::log1p(-p);
  return from_nats(h, base);
}

double true_secrecy_capacity_bswc(double p_bob, double q_eve, LogBase base) {
  check_crossover(p_bob, "p_bob");
  check_crossover(q_eve, "q_eve");
  return std::max(0.0, binary_entropy(q_eve, base) - binary_entropy(p_bob, base));
}

}  // namespace locsec
