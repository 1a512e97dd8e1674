// Copyright 2026 The qasym Authors
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

namespace qasym {

// Base for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

enum class ValidationFailure {
  kDimension,
  kHermiticity,
  kNegativeEigenvalue,
  kTrace,
  kNotPositive,        // Choi operator
  kNotTracePreserving, // Choi operator
  kNotUnitary,
  kNotEnergyPreserving,
};

const char* to_string(ValidationFailure failure);

// Raised when a matrix fails a state or channel invariant. `magnitude` is the
// size of the violation (e.g. the trace deviation or the most negative
// eigenvalue).
class ValidationError : public Error {
 public:
  ValidationError(ValidationFailure failure, double magnitude, const std::string& what)
      : Error(what), failure_(failure), magnitude_(magnitude) {}

  ValidationFailure failure() const { return failure_; }
  double magnitude() const { return magnitude_; }

 private:
  ValidationFailure failure_;
  double magnitude_;
};

}  // namespace qasym
