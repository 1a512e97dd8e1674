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

#include <optional>
#include <string>

#include "qasym/channel.hpp"
#include "qasym/coherence.hpp"

namespace qasym {

enum class FeasibilityStatus { kFeasible, kInfeasible, kUndetermined };
enum class Certificate { kModeSupport, kQfiDecrease, kSolverResidual };

const char* to_string(FeasibilityStatus status);
const char* to_string(Certificate certificate);

struct FeasibilityOptions {
  double tol = 1e-7;
  int max_iter = 20000;
  double coherence_tol = kDefaultCoherenceTolerance;
};

struct FeasibilityVerdict {
  FeasibilityStatus status = FeasibilityStatus::kUndetermined;
  std::optional<Certificate> certificate;
  double residual = 0.0;
  int iterations = 0;
  // Feasible verdicts carry kSolverResidual; undetermined ones carry none.
  // Choi operator of the last PSD iterate when the solver ran. For feasible
  // verdicts it maps rho to sigma within `tol` in trace norm.
  std::optional<Matrix> witness;
};

// Decides whether some covariant channel maps rho to sigma.
//
// Sound infeasibility certificates are tried first:
//   1. a gap of sigma outside the lattice J(rho)     -> mode-support
//   2. qfi(sigma) > qfi(rho) + tol                   -> qfi-decrease
//   3. a gap of sigma outside I(rho)                 -> mode-support
// Otherwise Douglas-Rachford splitting runs between the PSD cone and the
// affine set of covariant, trace-preserving Choi operators C with
// C(rho) = sigma. The verdict is feasible when the PSD iterate is within
// `tol` of that affine set and reproduces sigma within `tol`; if max_iter is
// exhausted the verdict is undetermined.
FeasibilityVerdict covariant_convertible(const DensityMatrix& rho, const DensityMatrix& sigma,
                                         const FeasibilityOptions& options = {});
FeasibilityVerdict covariant_convertible(const DensityMatrix& rho, const DensityMatrix& sigma,
                                         double tol, int max_iter);

}  // namespace qasym
