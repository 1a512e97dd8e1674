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

#include <map>

#include "qasym/density_matrix.hpp"

namespace qasym {

// Eigenvalues below this are treated as outside the support.
inline constexpr double kSupportCutoff = 1e-12;

// Quantum Fisher information of rho with respect to its own Hamiltonian,
//   F_Q = 2 sum_{k,l} (l_k - l_l)^2 / (l_k + l_l) |<k|H|l>|^2
// over the eigenpairs of rho. Pairs with l_k + l_l below 1e-12 are skipped;
// degenerate pairs contribute nothing, so the result does not depend on the
// eigenbasis chosen inside a degenerate eigenspace.
double qfi(const DensityMatrix& rho);

// Relative entropy Tr rho (log rho - log gamma) in nats. Returns +infinity
// when the support of rho is not contained in that of gamma.
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& gamma);

// Renyi free energy sgn(a)/(a - 1) log Tr p^a gamma^(1-a) for commuting p and
// gamma (rejected otherwise). Limits:
//   a = 1      relative entropy
//   a = 0      -log of the gamma-weight on the support of p
//   a = +inf   log max_k p_k / g_k
//   a = -inf   log max_k g_k / p_k
// computed on the joint eigenvalues (p_k, g_k). May return +infinity.
double renyi_free_energy(const DensityMatrix& p, const DensityMatrix& gamma, double alpha);

// 32 ||H||_inf^2 sqrt(eps): the continuity bound on |F_Q(rho) - F_Q(sigma)|
// when ||rho - sigma||_1 = eps.
double qfi_continuity_bound(const Hamiltonian& h, double eps);

struct MonotoneReport {
  double qfi = 0.0;
  double relative_entropy = 0.0;
  std::map<double, double> renyi_values;
  double beta = 0.0;
};

// Monotones of rho against the Gibbs state of its Hamiltonian at `beta`.
// Renyi values are included only when rho commutes with the Gibbs state.
MonotoneReport monotone_report(const DensityMatrix& rho, double beta,
                               std::span<const double> alphas = {});

}  // namespace qasym
