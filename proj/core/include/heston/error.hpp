// Copyright 2026 The heston-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace heston {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// The operation requires a different criticality regime (sign of b).
class RegimeError : public Error {
 public:
  using Error::Error;
};

// A path is too short or otherwise unusable.
class DegeneratePathError : public Error {
 public:
  using Error::Error;
};

// int_y * int_inv_y - T^2 is not (numerically) positive, so the
// information matrix is singular and the MLE does not exist.
class DeterminantNonpositive : public Error {
 public:
  DeterminantNonpositive(const std::string& what, double det)
      : Error(what), det_(det) {}
  double det_condition() const noexcept { return det_; }

 private:
  double det_;
};

// Malformed configuration or input file.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace heston
