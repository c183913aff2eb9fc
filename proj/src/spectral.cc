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

#include "locsec/spectral.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "locsec/errors.h"

namespace locsec {

namespace {

constexpr int kMaxSweeps = 100;

double off_diagonal_norm(const Eigen::MatrixXd& a) {
  double sum = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i != j) sum += a(i, j) * a(i, j);
    }
  }
  return std::sqrt(sum);
}

}  // namespace

Eigen::MatrixXd restrict_to(const Eigen::MatrixXd& m, const Eigen::MatrixXd& basis) {
  if (m.rows() != m.cols() || m.cols() != basis.rows()) {
    throw DimensionError("restrict_to: basis does not match matrix size");
  }
  const Eigen::MatrixXd r = basis.transpose() * m * basis;
  return 0.5 * (r + r.transpose());
}

SymEig sym_eig(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw DimensionError("sym_eig: matrix is not square");
  const Eigen::Index n = m.rows();
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw ValidationError("sym_eig: matrix is not symmetric");
  }

  Eigen::MatrixXd a = 0.5 * (m + m.transpose());
  Eigen::MatrixXd q = Eigen::MatrixXd::Identity(n, n);
  const double target = 1e-12 * a.norm();

  for (int sweep = 0; sweep < kMaxSweeps && off_diagonal_norm(a) > target; ++sweep) {
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index r = p + 1; r < n; ++r) {
        const double apr = a(p, r);
        if (apr == 0.0) continue;
        // Rotation annihilating a(p, r); t is the smaller root of
        // t^2 + 2 theta t - 1 = 0.
        const double theta = (a(r, r) - a(p, p)) / (2.0 * apr);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akr = a(k, r);
          a(k, p) = c * akp - s * akr;
          a(k, r) = s * akp + c * akr;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double ark = a(r, k);
          a(p, k) = c * apk - s * ark;
          a(r, k) = s * apk + c * ark;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double qkp = q(k, p);
          const double qkr = q(k, r);
          q(k, p) = c * qkp - s * qkr;
          q(k, r) = s * qkp + c * qkr;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return a(i, i) > a(j, j); });

  SymEig out{Eigen::VectorXd(n), Eigen::MatrixXd(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    out.values(k) = a(src, src);
    Eigen::VectorXd vec = q.col(src);
    Eigen::Index lead = 0;
    vec.cwiseAbs().maxCoeff(&lead);
    if (vec(lead) < 0.0) vec = -vec;
    out.vectors.col(k) = vec;
  }
  return out;
}

double commutator_norm(const EitSystem& sys) {
  return (sys.v * sys.lam - sys.lam * sys.v).norm();
}

PencilSpectrum pencil_spectrum(const EitSystem& sys) {
  const Eigen::MatrixXd v_r = restrict_to(sys.v, sys.basis);
  const Eigen::MatrixXd lam_r = restrict_to(sys.lam, sys.basis);

  const SymEig lam_eig = sym_eig(lam_r);
  const double smallest = lam_eig.values.minCoeff();
  if (smallest <= kSingularPencilThreshold) {
    std::ostringstream msg;
    msg << "pencil_spectrum: Eve's Gram matrix restricted to the perturbation "
           "subspace has eigenvalue "
        << smallest
        << "; the pencil (V, Lam) is singular (Lam must be positive definite "
           "on the subspace orthogonal to sqrt(P_X))";
    throw SingularPencilError(msg.str());
  }
  const Eigen::VectorXd inv_sqrt = lam_eig.values.cwiseSqrt().cwiseInverse();
  const Eigen::MatrixXd whitener =
      lam_eig.vectors * inv_sqrt.asDiagonal() * lam_eig.vectors.transpose();
  const Eigen::MatrixXd lam_inv = lam_eig.vectors *
                                  lam_eig.values.cwiseInverse().asDiagonal() *
                                  lam_eig.vectors.transpose();

  Eigen::MatrixXd v_white = whitener * v_r * whitener;
  v_white = 0.5 * (v_white + v_white.transpose());
  const SymEig white_eig = sym_eig(v_white);

  const Eigen::Index m = white_eig.values.size();
  PencilSpectrum spec;
  spec.d = white_eig.values;
  spec.lam.resize(m);
  spec.modes.resize(sys.basis.rows(), m);
  spec.v_quotient.resize(m);
  spec.lam_quotient.resize(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const Eigen::VectorXd qj = white_eig.vectors.col(j);
    spec.lam(j) = 1.0 / qj.dot(lam_inv * qj);
    const Eigen::VectorXd mode = sys.basis * (whitener * qj);
    const double norm2 = mode.squaredNorm();
    spec.v_quotient(j) = mode.dot(sys.v * mode) / norm2;
    spec.lam_quotient(j) = mode.dot(sys.lam * mode) / norm2;
    spec.modes.col(j) = mode;
  }
  spec.lam_max_perp_v = sym_eig(v_r).values(0);
  spec.commutator = commutator_norm(sys);
  spec.commuting = spec.commutator < kCommutingThreshold;
  return spec;
}

double eta_loc_sec(const EitSystem& sys) { return pencil_spectrum(sys).d_max(); }

}  // namespace locsec
