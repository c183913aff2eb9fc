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

// Local (Euclidean) geometry of a wiretap channel around its reference
// input. A conditional law P_{X|U=u} is written as
//
//   P_X(x) + epsilon * sqrt(P_X(x)) * L_u(x),
//
// and mutual informations become quadratic forms in the L_u:
//
//   I(U;X) ~ eps^2/2 E||L_U||^2,  I(U;Y) ~ eps^2/2 E[L_U' V L_U],
//   I(U;Z) ~ eps^2/2 E[L_U' Lam L_U],
//
// with V = B_Y' B_Y, Lam = B_Z' B_Z and B the divergence transfer matrices.

#ifndef LOCSEC_EIT_H_
#define LOCSEC_EIT_H_

#include <limits>

#include <Eigen/Dense>

#include "locsec/channels.h"
#include "locsec/probability.h"

namespace locsec {

inline constexpr double kOrthogonalityTolerance = 1e-9;

// diag(P_Y)^{-1/2} P_{Y|X} diag(P_X)^{1/2}.
Eigen::MatrixXd dtm(const TransitionMatrix& ch, const Pmf& px);

// Orthonormal basis of the complement of `unit` (|X| x (|X|-1)), taken from
// the Householder reflection that swaps e_1 and `unit`.
Eigen::MatrixXd complement_basis(const Eigen::VectorXd& unit);

struct EitSystem {
  Pmf px;
  Eigen::VectorXd sqrt_px;
  Eigen::MatrixXd basis;  // columns span the perturbation subspace
  Eigen::MatrixXd b_y;
  Eigen::MatrixXd b_z;
  Eigen::MatrixXd v;
  Eigen::MatrixXd lam;

  std::size_t nx() const { return px.size(); }
};

EitSystem eit_system(const WiretapChannel& wc);

// Removes the sqrt(P_X) component of every column. Opt-in repair for
// perturbations that drifted off the subspace.
Eigen::MatrixXd project_out_reference(const Eigen::VectorXd& sqrt_px,
                                      const Eigen::MatrixXd& l);

// Largest epsilon keeping every perturbed conditional inside [0, 1]^|X|.
// +infinity when every column is zero.
double max_valid_epsilon(const Pmf& px, const Eigen::MatrixXd& l);

// P_X + epsilon sqrt(P_X) .* lu. Throws DomainError if lu is not orthogonal
// to sqrt(P_X), and ValidationError naming the symbol if an entry goes
// negative. The result is renormalized explicitly: its mass differs from 1
// only by the tolerated orthogonality drift.
Pmf perturbed_conditional(const Pmf& px, const Eigen::VectorXd& lu,
                          double epsilon);

// A message law P_U with one scaled perturbation column per message.
//
// Invariants (checked on construction, ValidationError otherwise):
//   * every column is orthogonal to sqrt(P_X) within 1e-9;
//   * sum_u P_U(u) L_u = 0 within 1e-9;
//   * 0 < epsilon < 1 and epsilon <= max_valid_epsilon(P_X, L).
class PerturbationStrategy {
 public:
  PerturbationStrategy(const Pmf& px, Pmf pu, Eigen::MatrixXd l, double epsilon);

  const Pmf& px() const { return px_; }
  const Pmf& pu() const { return pu_; }
  const Eigen::MatrixXd& l() const { return l_; }
  double epsilon() const { return epsilon_; }
  std::size_t messages() const { return pu_.size(); }

  // P_{X|U=u}.
  Pmf conditional(std::size_t u) const;

 private:
  Pmf px_;
  Pmf pu_;
  Eigen::MatrixXd l_;
  double epsilon_;
};

// sum_u P_U(u) L_u' M L_u, the unscaled quadratic energy of a strategy.
double weighted_quadratic(const Pmf& pu, const Eigen::MatrixXd& l,
                          const Eigen::MatrixXd& m);

// Quadratic approximations of I(U;X), I(U;Y), I(U;Z), in nats.
double eit_mi_x(const PerturbationStrategy& s);
double eit_mi_y(const PerturbationStrategy& s, const EitSystem& sys);
double eit_mi_z(const PerturbationStrategy& s, const EitSystem& sys);

}  // namespace locsec

#endif  // LOCSEC_EIT_H_
