// Copyright 2026 The qcav developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace qcav {

// Requested register width exceeds the configured qubit cap.
class resource_limit_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A matrix that must be positive semidefinite has an eigenvalue below
// -tol.  Carries the offending eigenvalue for diagnostics.
class not_psd_error : public std::runtime_error {
 public:
  not_psd_error(const std::string& what, double min_eigenvalue)
      : std::runtime_error(what), min_eigenvalue_(min_eigenvalue) {}
  double min_eigenvalue() const { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

// An operator family whose sum of squares must resolve the identity
// does not, beyond tolerance.  Carries the completeness residual.
class incomplete_family_error : public std::runtime_error {
 public:
  incomplete_family_error(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

// The identity is not in the span of the family, so no mixing can make
// operator 0 proportional to the identity.
class canonicalization_error : public std::runtime_error {
 public:
  canonicalization_error(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

// A measured syndrome pattern that the recovery table cannot correct
// (more than one pair flagged).
class uncorrectable_syndrome_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A state handed to a decoder lies outside the code space beyond
// tolerance.  Carries the out-of-space residual norm.
class decode_error : public std::runtime_error {
 public:
  decode_error(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

// An internal numerical routine failed to converge or produced an
// inconsistent result; inputs were formally valid.
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed model/code description (bad JSON, unknown preset, wrong
// field shape).  Message includes the offending file or field.
class parse_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qcav
