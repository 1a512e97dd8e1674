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

#include "qasym/catalysis.hpp"

#include <cmath>

#include "qasym/error.hpp"
#include "qasym/monotones.hpp"

namespace qasym {

const char* to_string(CatalysisStatus status) {
  switch (status) {
    case CatalysisStatus::kConvertible: return "convertible";
    case CatalysisStatus::kForbidden: return "forbidden";
    case CatalysisStatus::kUnknown: return "unknown";
  }
  return "unknown";
}

const char* to_string(VerdictReason reason) {
  switch (reason) {
    case VerdictReason::kJInclusion: return "j-inclusion";
    case VerdictReason::kNoBroadcasting: return "no-broadcasting";
    case VerdictReason::kInsufficientCriteria: return "insufficient-criteria";
  }
  return "unknown";
}

CatalysisVerdict verdict_theorem1(const DensityMatrix& rho, const DensityMatrix& sigma, double tol) {
  const CoherenceSet i_rho = available_coherences(rho, tol);
  const CoherenceSet i_sigma = available_coherences(sigma, tol);
  if (lattice_subset(reachable_lattice(i_sigma), reachable_lattice(i_rho))) {
    return {CatalysisStatus::kConvertible, VerdictReason::kJInclusion};
  }
  if (i_rho.trivial() && !i_sigma.trivial()) {
    return {CatalysisStatus::kForbidden, VerdictReason::kNoBroadcasting};
  }
  return {CatalysisStatus::kUnknown, VerdictReason::kInsufficientCriteria};
}

ConjectureReport evaluate_conjecture(const DensityMatrix& rho, const DensityMatrix& sigma,
                                     double beta, double tol) {
  ConjectureReport r;
  r.free_energy_rho = relative_entropy(rho, gibbs_state(rho.hamiltonian(), beta));
  r.free_energy_sigma = relative_entropy(sigma, gibbs_state(sigma.hamiltonian(), beta));
  r.free_energy_condition = r.free_energy_rho >= r.free_energy_sigma - 1e-9;
  r.lattice_condition = lattice_subset(reachable_lattice(available_coherences(sigma, tol)),
                                       reachable_lattice(available_coherences(rho, tol)));
  r.holds = r.free_energy_condition && r.lattice_condition;
  return r;
}

bool conjecture_predicate(const DensityMatrix& rho, const DensityMatrix& sigma, double beta) {
  return evaluate_conjecture(rho, sigma, beta).holds;
}

ObstructionReport bounded_catalyst_obstruction(const DensityMatrix& rho, const DensityMatrix& sigma,
                                               double m_bound) {
  if (!(m_bound > 0.0)) throw InvalidArgument("catalyst Hamiltonian bound M must be > 0");
  ObstructionReport r;
  r.qfi_in = qfi(rho);
  r.qfi_out = qfi(sigma);
  r.h_norm = rho.hamiltonian().operator_norm();
  r.m_bound = m_bound;
  if (r.qfi_out > r.qfi_in) {
    const double scale = 32.0 * (r.h_norm + m_bound) * (r.h_norm + m_bound);
    const double root = (r.qfi_out - r.qfi_in) / scale;
    r.eps_star = root * root;
  }
  return r;
}

CatalysisErrors catalysis_errors(const Channel& lam, const DensityMatrix& rho,
                                 const DensityMatrix& tau, const DensityMatrix& sigma) {
  const DensityMatrix input = tensor_state(rho, tau);
  const Hamiltonian expected_out = tensor_hamiltonian(sigma.hamiltonian(), tau.hamiltonian());
  if (lam.input_dimension() != input.dimension() ||
      lam.output_dimension() != expected_out.dimension()) {
    throw DimensionMismatch("catalytic channel must map S(x)C of dimension " +
                            std::to_string(input.dimension()) + " to S'(x)C of dimension " +
                            std::to_string(expected_out.dimension()));
  }
  if (!(lam.input_hamiltonian() == input.hamiltonian()) ||
      !(lam.output_hamiltonian() == expected_out)) {
    throw DimensionMismatch("catalytic channel Hamiltonians do not match the system and catalyst");
  }
  const Matrix mu = apply_choi(lam.choi(), lam.input_dimension(), lam.output_dimension(),
                               input.matrix());
  const DensityMatrix joint = DensityMatrix::unchecked(
      hermitian_part(mu), std::vector<Hamiltonian>{sigma.hamiltonian(), tau.hamiltonian()});

  CatalysisErrors e;
  e.joint = trace_norm(joint, tensor_state(sigma, tau));
  e.system = trace_norm(partial_trace(joint, {0}), sigma);
  e.catalyst = trace_norm(partial_trace(joint, {1}), tau);
  return e;
}

bool check_approx_catalysis_instance(const Channel& lam, const DensityMatrix& rho,
                                     const DensityMatrix& tau, const DensityMatrix& sigma,
                                     double eps) {
  const CatalysisErrors e = catalysis_errors(lam, rho, tau, sigma);
  return e.joint < eps && e.catalyst < kCatalystMarginalTolerance;
}

bool check_correlated_catalysis_instance(const Channel& lam, const DensityMatrix& rho,
                                         const DensityMatrix& tau, const DensityMatrix& sigma,
                                         double eps) {
  const CatalysisErrors e = catalysis_errors(lam, rho, tau, sigma);
  return e.system < eps && e.catalyst < kCatalystMarginalTolerance;
}

}  // namespace qasym
