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

#include "locsec/probability.h"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "locsec/errors.h"

namespace locsec {

namespace {

void check_entries(const Eigen::VectorXd& probs, const char* what) {
  if (probs.size() == 0) {
    throw ValidationError(std::string(what) + ": empty alphabet");
  }
  for (Eigen::Index i = 0; i < probs.size(); ++i) {
    if (!std::isfinite(probs(i)) || probs(i) < 0.0) {
      std::ostringstream msg;
      msg << what << ": entry " << i << " = " << probs(i)
          << " is not a non-negative probability";
      throw ValidationError(msg.str());
    }
  }
}

// (1 + t) log(1 + t) - t for t >= -1. Series near zero avoids the
// cancellation between the two leading terms.
double phi(double t) {
  if (t <= -1.0) return 1.0;
  if (std::abs(t) < 0.05) {
    double sum = 0.0;
    double power = t * t;
    for (int k = 2; k < 16; ++k) {
      const double term = power / (k * (k - 1.0));
      sum += (k % 2 == 0) ? term : -term;
      power *= t;
    }
    return sum;
  }
  return (1.0 + t) * std::log1p(t) - t;
}

}  // namespace

double from_nats(double nats, LogBase base) {
  return base == LogBase::kBits ? nats / std::numbers::ln2 : nats;
}

Pmf::Pmf(Eigen::VectorXd probs) : probs_(std::move(probs)) {
  check_entries(probs_, "Pmf");
  const double total = probs_.sum();
  if (std::abs(total - 1.0) > kPmfTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "Pmf: entries sum to " << total << ", not 1";
    throw ValidationError(msg.str());
  }
}

Pmf::Pmf(std::initializer_list<double> probs)
    : Pmf(Eigen::Map<const Eigen::VectorXd>(probs.begin(),
                                            static_cast<Eigen::Index>(probs.size()))) {}

Pmf Pmf::uniform(std::size_t n) {
  if (n == 0) throw ValidationError("Pmf::uniform: empty alphabet");
  return Pmf(Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n), 1.0 / n));
}

Pmf Pmf::renormalized(Eigen::VectorXd weights) {
  check_entries(weights, "Pmf::renormalized");
  const double total = weights.sum();
  if (!(total > 0.0)) throw ValidationError("Pmf::renormalized: zero total mass");
  weights /= total;
  return Pmf(std::move(weights));
}

bool Pmf::is_strictly_interior(double floor) const {
  return probs_.minCoeff() >= floor;
}

TransitionMatrix::TransitionMatrix(Eigen::MatrixXd entries)
    : entries_(std::move(entries)) {
  if (entries_.rows() == 0 || entries_.cols() == 0) {
    throw ValidationError("TransitionMatrix: empty alphabet");
  }
  for (Eigen::Index x = 0; x < entries_.cols(); ++x) {
    for (Eigen::Index y = 0; y < entries_.rows(); ++y) {
      const double v = entries_(y, x);
      if (!std::isfinite(v) || v < 0.0) {
        std::ostringstream msg;
        msg << "TransitionMatrix: entry (" << y << ", " << x << ") = " << v
            << " is not a probability";
        throw ValidationError(msg.str());
      }
    }
    const double total = entries_.col(x).sum();
    if (std::abs(total - 1.0) > kPmfTolerance) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "TransitionMatrix: column " << x << " sums to " << total;
      throw ValidationError(msg.str());
    }
  }
}

double entropy(const Pmf& p, LogBase base) {
  double h = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) h -= p[i] * std::log(p[i]);
  }
  return from_nats(h, base);
}

double kl_divergence(const Pmf& q, const Pmf& p, LogBase base) {
  if (q.size() != p.size()) {
    throw DimensionError("kl_divergence: alphabet sizes differ");
  }
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i] > 0.0 && p[i] == 0.0) {
      std::ostringstream msg;
      msg << "kl_divergence: q has mass at symbol " << i
          << " outside the support of p";
      throw DomainError(msg.str());
    }
  }
  return from_nats(detail::kl_from_perturbation(p.probs(), q.probs() - p.probs()),
                   base);
}

double chi_squared(const Pmf& q, const Pmf& p) {
  if (q.size() != p.size()) {
    throw DimensionError("chi_squared: alphabet sizes differ");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) {
      std::ostringstream msg;
      msg << "chi_squared: reference has zero mass at symbol " << i;
      throw DomainError(msg.str());
    }
    const double diff = q[i] - p[i];
    sum += diff * diff / p[i];
  }
  return sum;
}

Pmf output_marginal(const TransitionMatrix& ch, const Pmf& px) {
  if (ch.inputs() != px.size()) {
    std::ostringstream msg;
    msg << "output_marginal: channel has " << ch.inputs()
        << " inputs but the input law has " << px.size() << " symbols";
    throw DimensionError(msg.str());
  }
  return Pmf(ch.entries() * px.probs());
}

double mutual_information(const Pmf& px, const TransitionMatrix& ch,
                          LogBase base) {
  const Pmf py = output_marginal(ch, px);
  double mi = 0.0;
  for (std::size_t x = 0; x < px.size(); ++x) {
    if (px[x] == 0.0) continue;
    const Eigen::VectorXd col = ch.entries().col(static_cast<Eigen::Index>(x));
    mi += px[x] * detail::kl_from_perturbation(py.probs(), col - py.probs());
  }
  return from_nats(mi, base);
}

namespace detail {

double kl_from_perturbation(const Eigen::VectorXd& p,
                            const Eigen::VectorXd& delta) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (p(i) == 0.0) continue;
    sum += p(i) * phi(delta(i) / p(i));
  }
  return sum;
}

}  // namespace detail

}  // namespace locsec
