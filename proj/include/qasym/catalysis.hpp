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

#include "qasym/channel.hpp"
#include "qasym/coherence.hpp"

namespace qasym {

enum class CatalysisStatus { kConvertible, kForbidden, kUnknown };
enum class VerdictReason { kJInclusion, kNoBroadcasting, kInsufficientCriteria };

const char* to_string(CatalysisStatus status);
const char* to_string(VerdictReason reason);

struct CatalysisVerdict {
  CatalysisStatus status = CatalysisStatus::kUnknown;
  VerdictReason reason = VerdictReason::kInsufficientCriteria;
};

// Three-valued verdict on approximate catalytic convertibility rho -> sigma
// under covariant operations:
//   convertible  J(sigma) is a subgroup of J(rho)
//   forbidden    rho has no coherence (I(rho) = {0}) but sigma does
//   unknown      otherwise
// `tol` is the threshold for a nonzero matrix element.
CatalysisVerdict verdict_theorem1(const DensityMatrix& rho, const DensityMatrix& sigma,
                                  double tol = kDefaultCoherenceTolerance);

// The conjectured condition for approximately catalytic thermal operations:
// S(rho||gamma) >= S(sigma||gamma) (with 1e-9 slack) and J(sigma) within
// J(rho). Each state is compared to the Gibbs state of its own Hamiltonian.
// This is a conjecture, not a proven criterion.
struct ConjectureReport {
  bool holds = false;
  bool free_energy_condition = false;
  bool lattice_condition = false;
  double free_energy_rho = 0.0;
  double free_energy_sigma = 0.0;
};

ConjectureReport evaluate_conjecture(const DensityMatrix& rho, const DensityMatrix& sigma,
                                     double beta, double tol = kDefaultCoherenceTolerance);
bool conjecture_predicate(const DensityMatrix& rho, const DensityMatrix& sigma, double beta);

// QFI obstruction for catalysts whose Hamiltonian is bounded by M.
// If qfi(sigma) > qfi(rho), any approximately catalytic protocol with
// ||H_C||_inf < M needs error at least
//   eps_star = ((qfi(sigma) - qfi(rho)) / (32 (||H_S||_inf + M)^2))^2.
// ||H_S||_inf is taken from rho's Hamiltonian.
struct ObstructionReport {
  double qfi_in = 0.0;
  double qfi_out = 0.0;
  double h_norm = 0.0;
  double m_bound = 0.0;
  std::optional<double> eps_star;
};

ObstructionReport bounded_catalyst_obstruction(const DensityMatrix& rho, const DensityMatrix& sigma,
                                               double m_bound);

// Tolerance for the exact catalyst-marginal condition mu_C = tau_C.
inline constexpr double kCatalystMarginalTolerance = 1e-9;

struct CatalysisErrors {
  double joint = 0.0;     // ||mu_SC - sigma (x) tau||_1
  double system = 0.0;    // ||mu_S - sigma||_1
  double catalyst = 0.0;  // ||mu_C - tau||_1
};

// Runs lam on rho (x) tau; lam must map H_rho (x) H_tau to H_sigma (x) H_tau.
CatalysisErrors catalysis_errors(const Channel& lam, const DensityMatrix& rho,
                                 const DensityMatrix& tau, const DensityMatrix& sigma);

bool check_approx_catalysis_instance(const Channel& lam, const DensityMatrix& rho,
                                     const DensityMatrix& tau, const DensityMatrix& sigma,
                                     double eps);
bool check_correlated_catalysis_instance(const Channel& lam, const DensityMatrix& rho,
                                         const DensityMatrix& tau, const DensityMatrix& sigma,
                                         double eps);

}  // namespace qasym
