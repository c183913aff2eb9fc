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

#include "locsec/eit.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "locsec/errors.h"

namespace locsec {

namespace {

Eigen::VectorXd sqrt_of(const Pmf& px) { return px.probs().cwiseSqrt(); }

void check_rows(const Eigen::MatrixXd& l, std::size_t nx, const char* what) {
  if (static_cast<std::size_t>(l.rows()) != nx) {
    std::ostringstream msg;
    msg << what << ": perturbation has " << l.rows() << " rows, expected " << nx;
    throw DimensionError(msg.str());
  }
}

}  // namespace

Eigen::MatrixXd dtm(const TransitionMatrix& ch, const Pmf& px) {
  const Pmf py = output_marginal(ch, px);
  for (std::size_t y = 0; y < py.size(); ++y) {
    if (py[y] <= 0.0) {
      std::ostringstream msg;
      msg << "dtm: output marginal is zero at symbol " << y;
      throw DomainError(msg.str());
    }
  }
  for (std::size_t x = 0; x < px.size(); ++x) {
    if (px[x] <= 0.0) {
      std::ostringstream msg;
      msg << "dtm: input law is zero at symbol " << x;
      throw DomainError(msg.str());
    }
  }
  return py.probs().cwiseSqrt().cwiseInverse().asDiagonal() * ch.entries() *
         px.probs().cwiseSqrt().asDiagonal();
}

Eigen::MatrixXd complement_basis(const Eigen::VectorXd& unit) {
  const Eigen::Index n = unit.size();
  Eigen::VectorXd w = -unit;
  w(0) += 1.0;
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n);
  const double norm2 = w.squaredNorm();
  if (norm2 > 1e-300) h -= (2.0 / norm2) * w * w.transpose();
  return h.rightCols(n - 1);
}

EitSystem eit_system(const WiretapChannel& wc) {
  EitSystem sys{.px = wc.px(),
                .sqrt_px = sqrt_of(wc.px()),
                .basis = {},
                .b_y = dtm(wc.bob(), wc.px()),
                .b_z = dtm(wc.eve(), wc.px()),
                .v = {},
                .lam = {}};
  sys.basis = complement_basis(sys.sqrt_px);
  sys.v = sys.b_y.transpose() * sys.b_y;
  sys.lam = sys.b_z.transpose() * sys.b_z;
  return sys;
}

Eigen::MatrixXd project_out_reference(const Eigen::VectorXd& sqrt_px,
                                      const Eigen::MatrixXd& l) {
  return l - sqrt_px * (sqrt_px.transpose() * l);
}

double max_valid_epsilon(const Pmf& px, const Eigen::MatrixXd& l) {
  check_rows(l, px.size(), "max_valid_epsilon");
  double bound = std::numeric_limits<double>::infinity();
  for (Eigen::Index u = 0; u < l.cols(); ++u) {
    for (Eigen::Index x = 0; x < l.rows(); ++x) {
      const double p = px[static_cast<std::size_t>(x)];
      const double step = std::sqrt(p) * l(x, u);
      if (step < 0.0) {
        bound = std::min(bound, p / -step);
      } else if (step > 0.0) {
        bound = std::min(bound, (1.0 - p) / step);
      }
    }
  }
  return bound;
}

Pmf perturbed_conditional(const Pmf& px, const Eigen::VectorXd& lu,
                          double epsilon) {
  check_rows(lu, px.size(), "perturbed_conditional");
  const Eigen::VectorXd s = sqrt_of(px);
  const double drift = s.dot(lu);
  if (std::abs(drift) > kOrthogonalityTolerance) {
    std::ostringstream msg;
    msg << "perturbed_conditional: perturbation has component " << drift
        << " along sqrt(P_X)";
    throw DomainError(msg.str());
  }
  Eigen::VectorXd q = px.probs() + epsilon * s.cwiseProduct(lu);
  for (Eigen::Index x = 0; x < q.size(); ++x) {
    // Rounding slack at the validity boundary.
    if (q(x) < 0.0 && q(x) > -1e-14) q(x) = 0.0;
    if (q(x) < 0.0 || q(x) > 1.0 + 1e-14) {
      std::ostringstream msg;
      msg << "perturbed_conditional: symbol " << x << " gets probability "
          << q(x) << " at epsilon = " << epsilon;
      throw ValidationError(msg.str());
    }
  }
  return Pmf::renormalized(std::move(q));
}

PerturbationStrategy::PerturbationStrategy(const Pmf& px, Pmf pu,
                                           Eigen::MatrixXd l, double epsilon)
    : px_(px), pu_(std::move(pu)), l_(std::move(l)), epsilon_(epsilon) {
  check_rows(l_, px_.size(), "PerturbationStrategy");
  if (static_cast<std::size_t>(l_.cols()) != pu_.size()) {
    throw DimensionError("PerturbationStrategy: one perturbation column per message required");
  }
  const Eigen::VectorXd s = sqrt_of(px_);
  const Eigen::VectorXd drift = l_.transpose() * s;
  Eigen::Index worst = 0;
  if (drift.cwiseAbs().maxCoeff(&worst) > kOrthogonalityTolerance) {
    std::ostringstream msg;
    msg << "PerturbationStrategy: column " << worst
        << " is not orthogonal to sqrt(P_X) (component " << drift(worst) << ")";
    throw ValidationError(msg.str());
  }
  const Eigen::VectorXd mean = l_ * pu_.probs();
  if (mean.cwiseAbs().maxCoeff() > kOrthogonalityTolerance) {
    throw ValidationError("PerturbationStrategy: P_U-weighted mean perturbation is not zero");
  }
  if (!(epsilon_ > 0.0 && epsilon_ < 1.0)) {
    std::ostringstream msg;
    msg << "PerturbationStrategy: epsilon = " << epsilon_ << " outside (0, 1)";
    throw ValidationError(msg.str());
  }
  const double limit = max_valid_epsilon(px_, l_);
  if (epsilon_ > limit * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "PerturbationStrategy: epsilon = " << epsilon_
        << " exceeds the validity bound " << limit;
    throw ValidationError(msg.str());
  }
}

Pmf PerturbationStrategy::conditional(std::size_t u) const {
  return perturbed_conditional(px_, l_.col(static_cast<Eigen::Index>(u)), epsilon_);
}

double weighted_quadratic(const Pmf& pu, const Eigen::MatrixXd& l,
                          const Eigen::MatrixXd& m) {
  if (m.rows() != l.rows() || m.cols() != l.rows()) {
    throw DimensionError("weighted_quadratic: matrix does not match perturbation size");
  }
  if (static_cast<std::size_t>(l.cols()) != pu.size()) {
    throw DimensionError("weighted_quadratic: one column per message required");
  }
  const Eigen::MatrixXd ml = m * l;
  double sum = 0.0;
  for (Eigen::Index u = 0; u < l.cols(); ++u) {
    sum += pu[static_cast<std::size_t>(u)] * l.col(u).dot(ml.col(u));
  }
  return sum;
}

double eit_mi_x(const PerturbationStrategy& s) {
  double energy = 0.0;
  for (Eigen::Index u = 0; u < s.l().cols(); ++u) {
    energy += s.pu()[static_cast<std::size_t>(u)] * s.l().col(u).squaredNorm();
  }
  return 0.5 * s.epsilon() * s.epsilon() * energy;
}

double eit_mi_y(const PerturbationStrategy& s, const EitSystem& sys) {
  return 0.5 * s.epsilon() * s.epsilon() * weighted_quadratic(s.pu(), s.l(), sys.v);
}

double eit_mi_z(const PerturbationStrategy& s, const EitSystem& sys) {
  return 0.5 * s.epsilon() * s.epsilon() * weighted_quadratic(s.pu(), s.l(), sys.lam);
}

}  // namespace locsec
