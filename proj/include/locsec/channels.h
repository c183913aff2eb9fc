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

#ifndef LOCSEC_CHANNELS_H_
#define LOCSEC_CHANNELS_H_

#include <cstdint>
#include <optional>

#include "locsec/probability.h"

namespace locsec {

// A discrete memoryless wiretap channel at a reference input law. Bob sees
// Y through `bob`, Eve sees Z through `eve`.
//
// Invariants: both legs take |X| = |px| inputs, px is strictly interior and
// so are the induced output marginals P_Y and P_Z.
class WiretapChannel {
 public:
  WiretapChannel(Pmf px, TransitionMatrix bob, TransitionMatrix eve);

  const Pmf& px() const { return px_; }
  const TransitionMatrix& bob() const { return bob_; }
  const TransitionMatrix& eve() const { return eve_; }
  const Pmf& py() const { return py_; }
  const Pmf& pz() const { return pz_; }

  std::size_t nx() const { return px_.size(); }
  std::size_t ny() const { return bob_.outputs(); }
  std::size_t nz() const { return eve_.outputs(); }

 private:
  Pmf px_;
  TransitionMatrix bob_;
  TransitionMatrix eve_;
  Pmf py_;
  Pmf pz_;
};

TransitionMatrix bsc(double crossover);

// Binary symmetric wiretap channel; px defaults to uniform.
WiretapChannel bswc(double p_bob, double q_eve,
                    std::optional<Pmf> px = std::nullopt);

struct AwgnQuantizerOptions {
  // Interior bin edges are moved by up to +/- jitter * bin width, drawn from
  // the seed. Zero keeps the quantizer deterministic and seed-independent.
  double edge_jitter = 0.0;
  // Column entries below this are raised to it before renormalizing.
  double probability_floor = 1e-15;
};

// One leg of the quantized AWGN model: nx-ary PAM with unit average energy,
// noise sigma^2 = N0/2 with Eb = 1/log2(nx), and n_out equal-width bins over
// +/-(max|a| + 3 sigma) whose end bins absorb the tails.
TransitionMatrix quantized_awgn_leg(std::size_t nx, std::size_t n_out,
                                    double ebn0_db, std::uint64_t rng_seed,
                                    const AwgnQuantizerOptions& options = {});

// Wiretap channel with independently quantized legs and uniform input.
// Throws ValidationError with a diagnostic when a quantization bin ends up
// with zero mass under the uniform input.
WiretapChannel quantized_awgn_wiretap(std::size_t nx, std::size_t ny,
                                      std::size_t nz, double ebn0_bob_db,
                                      double ebn0_eve_db, std::uint64_t rng_seed,
                                      const AwgnQuantizerOptions& options = {});

// Binary entropy h(p).
double binary_entropy(double p, LogBase base = LogBase::kNats);

// max(0, h(q_eve) - h(p_bob)).
double true_secrecy_capacity_bswc(double p_bob, double q_eve,
                                  LogBase base = LogBase::kNats);

}  // namespace locsec

#endif  // LOCSEC_CHANNELS_H_
