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

#ifndef LOCSEC_ERRORS_H_
#define LOCSEC_ERRORS_H_

#include <stdexcept>
#include <string>

namespace locsec {

// Malformed probability objects: negative mass, bad normalization, an
// invalid perturbation strategy.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what)
      : std::invalid_argument(what) {}
};

// Arguments outside the mathematical domain of an operation (support
// violations, zero marginals, zero leakage denominators).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

class DimensionError : public std::invalid_argument {
 public:
  explicit DimensionError(const std::string& what)
      : std::invalid_argument(what) {}
};

// Eve's Gram matrix is not positive definite on the perturbation subspace,
// so the pencil (V, Lambda) has infinite generalized eigenvalues.
class SingularPencilError : public std::runtime_error {
 public:
  explicit SingularPencilError(const std::string& what)
      : std::runtime_error(what) {}
};

class InfeasibleLpError : public std::runtime_error {
 public:
  explicit InfeasibleLpError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace locsec

#endif  // LOCSEC_ERRORS_H_
