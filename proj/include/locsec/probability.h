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

// Exact finite-alphabet information measures. Everything is computed in
// nats; LogBase only selects the unit of the returned value.

#ifndef LOCSEC_PROBABILITY_H_
#define LOCSEC_PROBABILITY_H_

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace locsec {

inline constexpr double kPmfTolerance = 1e-12;
inline constexpr double kInteriorFloor = 1e-12;

enum class LogBase { kNats, kBits };

// Converts a value in nats to the requested unit.
double from_nats(double nats, LogBase base);

// A probability mass function over {0, ..., n-1}.
class Pmf {
 public:
  // Throws ValidationError unless every entry is >= 0 and the entries sum
  // to 1 within kPmfTolerance.
  explicit Pmf(Eigen::VectorXd probs);
  Pmf(std::initializer_list<double> probs);

  static Pmf uniform(std::size_t n);
  // Divides by the total mass. Negative entries or zero total still throw.
  static Pmf renormalized(Eigen::VectorXd weights);

  std::size_t size() const { return static_cast<std::size_t>(probs_.size()); }
  double operator[](std::size_t i) const { return probs_(static_cast<Eigen::Index>(i)); }
  const Eigen::VectorXd& probs() const { return probs_; }

  bool is_strictly_interior(double floor = kInteriorFloor) const;
  double min_entry() const { return probs_.minCoeff(); }

 private:
  Eigen::VectorXd probs_;
};

// Column-stochastic channel law: entry (y, x) = P(y | x).
class TransitionMatrix {
 public:
  explicit TransitionMatrix(Eigen::MatrixXd entries);

  std::size_t outputs() const { return static_cast<std::size_t>(entries_.rows()); }
  std::size_t inputs() const { return static_cast<std::size_t>(entries_.cols()); }
  const Eigen::MatrixXd& entries() const { return entries_; }
  double operator()(std::size_t y, std::size_t x) const {
    return entries_(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(x));
  }

 private:
  Eigen::MatrixXd entries_;
};

double entropy(const Pmf& p, LogBase base = LogBase::kNats);

// D(q || p). Throws DomainError when q puts mass outside supp(p).
double kl_divergence(const Pmf& q, const Pmf& p, LogBase base = LogBase::kNats);

// Pearson chi-squared divergence sum (q - p)^2 / p; p must be strictly
// interior.
double chi_squared(const Pmf& q, const Pmf& p);

Pmf output_marginal(const TransitionMatrix& ch, const Pmf& px);

double mutual_information(const Pmf& px, const TransitionMatrix& ch,
                          LogBase base = LogBase::kNats);

namespace detail {

// Sum_i p_i * phi(delta_i / p_i) with phi(t) = (1 + t) log(1 + t) - t, i.e.
// D(p + delta || p) written so that every term is non-negative and small
// perturbations keep full relative precision. delta must not push any
// entry below zero; entries with p_i == 0 require delta_i == 0.
double kl_from_perturbation(const Eigen::VectorXd& p,
                            const Eigen::VectorXd& delta);

}  // namespace detail

}  // namespace locsec

#endif  // LOCSEC_PROBABILITY_H_
