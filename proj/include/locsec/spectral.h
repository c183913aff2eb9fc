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

#ifndef LOCSEC_SPECTRAL_H_
#define LOCSEC_SPECTRAL_H_

#include <Eigen/Dense>

#include "locsec/eit.h"

namespace locsec {

// basis' M basis, symmetrized.
Eigen::MatrixXd restrict_to(const Eigen::MatrixXd& m, const Eigen::MatrixXd& basis);

struct SymEig {
  Eigen::VectorXd values;   // descending
  Eigen::MatrixXd vectors;  // column i pairs with values(i)
};

// Cyclic Jacobi eigendecomposition of a symmetric matrix. Stops when the
// off-diagonal Frobenius norm falls below 1e-12 * ||M||_F or after 100
// sweeps. Each eigenvector is signed so that its largest-magnitude entry is
// positive (first such entry on ties). Throws ValidationError if M is not
// symmetric within 1e-10 (relative to max(1, ||M||_max)).
SymEig sym_eig(const Eigen::MatrixXd& m);

// ||V Lam - Lam V||_F.
double commutator_norm(const EitSystem& sys);

inline constexpr double kSingularPencilThreshold = 1e-12;
inline constexpr double kCommutingThreshold = 1e-10;

// Generalized spectrum of (V, Lam) on the perturbation subspace, obtained by
// whitening with the inverse square root of the restricted Lam.
struct PencilSpectrum {
  Eigen::VectorXd d;    // generalized eigenvalues, descending
  Eigen::VectorXd lam;  // lam_j = 1 / (q_j' Lam_r^{-1} q_j)
  // Generalized eigenvectors in |X|-space, normalized so that
  // mode' Lam mode = 1. Then ||mode_j||^2 = 1 / lam_j.
  Eigen::MatrixXd modes;
  // mode' V mode / ||mode||^2 and mode' Lam mode / ||mode||^2, evaluated
  // directly from V and Lam. When V and Lam commute these are the standard
  // eigenvalues (d_V)_j and (d_Lam)_j shared by the mode.
  Eigen::VectorXd v_quotient;
  Eigen::VectorXd lam_quotient;
  double lam_max_perp_v = 0.0;  // largest eigenvalue of restricted V
  double commutator = 0.0;      // ||V Lam - Lam V||_F
  bool commuting = false;       // commutator < 1e-10

  std::size_t size() const { return static_cast<std::size_t>(d.size()); }
  double d_max() const { return d(0); }
};

// Throws SingularPencilError when the restricted Lam has an eigenvalue
// <= 1e-12, i.e. some perturbation leaks nothing to Eve.
PencilSpectrum pencil_spectrum(const EitSystem& sys);

// Secret local contraction coefficient: sup over the perturbation subspace
// of L'VL / L'Lam L, the top generalized eigenvalue.
double eta_loc_sec(const EitSystem& sys);

}  // namespace locsec

#endif  // LOCSEC_SPECTRAL_H_
