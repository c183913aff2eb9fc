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

#include "locsec/baselines.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "locsec/errors.h"
#include "locsec/spectral.h"

namespace locsec {

namespace {

Eigen::VectorXd input_delta(const PerturbationStrategy& s, std::size_t u) {
  return s.epsilon() * s.px().probs().cwiseSqrt().cwiseProduct(s.l().col(u));
}

// sum_u P_U(u) D(P_{W|U=u} || P_W) with P_{W|U=u} - P_W = ch * delta_u.
double mixture_information(const PerturbationStrategy& s, const Eigen::MatrixXd& ch,
                           const Eigen::VectorXd& reference) {
  double total = 0.0;
  for (std::size_t u = 0; u < s.messages(); ++u) {
    const Eigen::VectorXd delta = ch * input_delta(s, u);
    total += s.pu()[u] * detail::kl_from_perturbation(reference, delta);
  }
  return total;
}

Eigen::VectorXd random_unit_direction(const Eigen::MatrixXd& basis, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd g(basis.cols());
  for (Eigen::Index i = 0; i < g.size(); ++i) g(i) = gauss(rng);
  Eigen::VectorXd l = basis * g;
  return l / l.norm();
}

PerturbationStrategy antipodal(const Pmf& px, const Eigen::VectorXd& direction,
                               double epsilon) {
  Eigen::MatrixXd l(direction.size(), 2);
  l.col(0) = direction;
  l.col(1) = -direction;
  const double limit = max_valid_epsilon(px, l);
  return PerturbationStrategy(px, Pmf::uniform(2), l, std::min(epsilon, 0.99 * limit));
}

// Dirichlet(1) draws, one P(U|X=x) column per input symbol.
Eigen::MatrixXd random_encoder(std::size_t card_u, std::size_t nx, std::mt19937_64& rng) {
  std::exponential_distribution<double> expo(1.0);
  Eigen::MatrixXd enc(card_u, nx);
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t u = 0; u < card_u; ++u) enc(u, x) = expo(rng);
    enc.col(x) /= enc.col(x).sum();
  }
  return enc;
}

struct IbState {
  double rate = 0.0;
  double utility = 0.0;
  bool converged = false;
};

double plogq(double p, double q) { return p > 0.0 ? p * std::log(p / q) : 0.0; }

IbState run_ib(const Eigen::VectorXd& px, const Eigen::MatrixXd& ch, double beta,
               Eigen::MatrixXd enc, const IbOptions& options) {
  const Eigen::Index nx = px.size();
  const Eigen::Index ny = ch.rows();
  const Eigen::Index card = enc.rows();
  Eigen::VectorXd pu(card);
  Eigen::MatrixXd py_u(ny, card);
  auto refresh = [&] {
    pu = enc * px;
    for (Eigen::Index u = 0; u < card; ++u) {
      Eigen::VectorXd acc = Eigen::VectorXd::Zero(ny);
      for (Eigen::Index x = 0; x < nx; ++x) acc += enc(u, x) * px(x) * ch.col(x);
      py_u.col(u) = pu(u) > 0.0 ? Eigen::VectorXd(acc / pu(u)) : Eigen::VectorXd(ch * px);
    }
  };
  refresh();

  IbState state;
  for (std::size_t it = 0; it < options.max_iters; ++it) {
    Eigen::MatrixXd next(card, nx);
    for (Eigen::Index x = 0; x < nx; ++x) {
      Eigen::VectorXd logits(card);
      for (Eigen::Index u = 0; u < card; ++u) {
        double kl = 0.0;
        for (Eigen::Index y = 0; y < ny; ++y) kl += plogq(ch(y, x), py_u(y, u));
        logits(u) = pu(u) > 0.0 ? std::log(pu(u)) - beta * kl
                                : -std::numeric_limits<double>::infinity();
      }
      const double top = logits.maxCoeff();
      next.col(x) = (logits.array() - top).exp();
      next.col(x) /= next.col(x).sum();
    }
    // Expected KL between successive encoders.
    double change = 0.0;
    for (Eigen::Index x = 0; x < nx; ++x) {
      for (Eigen::Index u = 0; u < card; ++u) {
        change += px(x) * plogq(next(u, x), std::max(enc(u, x), 1e-300));
      }
    }
    enc = std::move(next);
    refresh();
    if (change < options.tolerance) {
      state.converged = true;
      break;
    }
  }

  const Eigen::VectorXd py = ch * px;
  for (Eigen::Index u = 0; u < card; ++u) {
    for (Eigen::Index x = 0; x < nx; ++x) {
      state.rate += px(x) * plogq(enc(u, x), pu(u));
    }
    for (Eigen::Index y = 0; y < ny; ++y) {
      state.utility += pu(u) * plogq(py_u(y, u), py(y));
    }
  }
  state.rate = std::max(state.rate, 0.0);
  state.utility = std::max(state.utility, 0.0);
  return state;
}

}  // namespace

StrategyInformation exact_strategy_mi(const WiretapChannel& wc,
                                      const PerturbationStrategy& s) {
  if (s.px().size() != wc.nx()) {
    std::ostringstream msg;
    msg << "exact_strategy_mi: strategy has " << s.px().size() << " input symbols, channel has "
        << wc.nx();
    throw DimensionError(msg.str());
  }
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(wc.nx(), wc.nx());
  return {.iux = mixture_information(s, identity, s.px().probs()),
          .iuy = mixture_information(s, wc.bob().entries(), wc.py().probs()),
          .iuz = mixture_information(s, wc.eve().entries(), wc.pz().probs())};
}

std::vector<IbCurvePoint> blahut_arimoto_ib(const Pmf& px, const TransitionMatrix& ch,
                                            const std::vector<double>& betas,
                                            const IbOptions& options) {
  if (options.card_u < 2) throw DomainError("blahut_arimoto_ib: need at least two messages");
  if (ch.inputs() != px.size()) {
    throw DimensionError("blahut_arimoto_ib: channel inputs do not match P_X");
  }
  std::vector<IbCurvePoint> curve;
  curve.reserve(betas.size());
  for (std::size_t i = 0; i < betas.size(); ++i) {
    const double beta = betas[i];
    if (!(beta > 0.0)) {
      std::ostringstream msg;
      msg << "blahut_arimoto_ib: beta must be positive, got " << beta;
      throw DomainError(msg.str());
    }
    IbCurvePoint best{.beta = beta};
    bool have = false;
    for (std::size_t r = 0; r < std::max<std::size_t>(options.restarts, 1); ++r) {
      std::seed_seq seq{static_cast<std::uint32_t>(options.seed),
                        static_cast<std::uint32_t>(options.seed >> 32),
                        static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(r)};
      std::mt19937_64 rng(seq);
      const IbState run = run_ib(px.probs(), ch.entries(), beta,
                                 random_encoder(options.card_u, px.size(), rng), options);
      if (!have || run.utility > best.utility) {
        best = {.rate = run.rate, .utility = run.utility, .beta = beta,
                .converged = run.converged};
        have = true;
      }
    }
    curve.push_back(best);
  }
  std::stable_sort(curve.begin(), curve.end(),
                   [](const IbCurvePoint& a, const IbCurvePoint& b) { return a.rate < b.rate; });
  return curve;
}

ContractionEstimate mc_global_contraction(const WiretapChannel& wc, std::size_t samples,
                                          const std::vector<double>& eps_grid,
                                          std::uint64_t seed) {
  if (samples < 1) throw DomainError("mc_global_contraction: need at least one sample");
  if (eps_grid.empty()) throw DomainError("mc_global_contraction: empty epsilon grid");
  for (double e : eps_grid) {
    if (!(e > 0.0 && e < 1.0)) throw DomainError("mc_global_contraction: epsilon outside (0, 1)");
  }
  const EitSystem sys = eit_system(wc);
  const PencilSpectrum spec = pencil_spectrum(sys);

  ContractionEstimate est;
  est.eta_loc = spec.d_max();
  est.upper_bound = 2.0 / wc.px().min_entry() * est.eta_loc;
  est.max_ratio = -std::numeric_limits<double>::infinity();

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, eps_grid.size() - 1);
  const double eps_min = *std::min_element(eps_grid.begin(), eps_grid.end());
  for (std::size_t i = 0; i < samples; ++i) {
    Eigen::VectorXd direction;
    double epsilon = 0.0;
    if (i == 0) {
      direction = spec.modes.col(0).normalized();
      epsilon = eps_min;
    } else {
      direction = random_unit_direction(sys.basis, rng);
      epsilon = eps_grid[pick(rng)];
    }
    const PerturbationStrategy s = antipodal(wc.px(), direction, epsilon);
    const StrategyInformation info = exact_strategy_mi(wc, s);
    if (info.iuz <= 0.0) continue;
    const double ratio = info.iuy / info.iuz;
    est.ratios.push_back(ratio);
    est.epsilons.push_back(s.epsilon());
    est.max_ratio = std::max(est.max_ratio, ratio);
  }
  if (est.ratios.empty()) {
    throw DomainError("mc_global_contraction: every sample had zero leakage");
  }
  return est;
}

UtilityLeakageSamples utility_leakage_samples(const EitSystem& sys, std::size_t n,
                                              std::uint64_t seed) {
  const PencilSpectrum spec = pencil_spectrum(sys);
  UtilityLeakageSamples out;
  out.eta_loc = spec.d_max();
  out.points.reserve(n);
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::VectorXd l =
        i == 0 ? Eigen::VectorXd(spec.modes.col(0).normalized()) : random_unit_direction(sys.basis, rng);
    out.points.push_back({.leakage = l.dot(sys.lam * l), .utility = l.dot(sys.v * l)});
  }
  return out;
}

}  // namespace locsec
