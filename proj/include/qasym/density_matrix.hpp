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

#include <cstddef>
#include <limits>
#include <map>
#include <span>
#include <vector>

#include "qasym/hamiltonian.hpp"
#include "qasym/linalg.hpp"

namespace qasym {

inline constexpr double kDefaultStateTolerance = 1e-9;

// Hermitian, positive semidefinite, unit-trace operator attached to a
// Hamiltonian. The Hamiltonian may carry a declared tensor factorization,
// which partial_trace and the protocol simulator rely on.
class DensityMatrix {
 public:
  // Wraps a matrix without checking the state invariants. Intended for
  // results of operations that preserve them by construction.
  static DensityMatrix unchecked(Matrix matrix, std::vector<Hamiltonian> factors,
                                 double tolerance = kDefaultStateTolerance);
  static DensityMatrix unchecked(Matrix matrix, const Hamiltonian& hamiltonian,
                                 double tolerance = kDefaultStateTolerance);

  const Matrix& matrix() const { return matrix_; }
  const Hamiltonian& hamiltonian() const { return hamiltonian_; }
  std::span<const Hamiltonian> factors() const { return factors_; }
  std::vector<std::size_t> factor_dimensions() const;
  std::size_t dimension() const { return hamiltonian_.dimension(); }
  double tolerance() const { return tolerance_; }

 private:
  DensityMatrix(Matrix matrix, std::vector<Hamiltonian> factors, double tolerance);

  Matrix matrix_;
  std::vector<Hamiltonian> factors_;
  Hamiltonian hamiltonian_;
  double tolerance_;
};

// Symmetrizes `matrix` and checks the state invariants within `tol`. Each
// failure kind raises a ValidationError with its own ValidationFailure.
DensityMatrix validate_state(const Matrix& matrix, const Hamiltonian& h,
                             double tol = kDefaultStateTolerance);
DensityMatrix validate_state(const Matrix& matrix, std::vector<Hamiltonian> factors,
                             double tol = kDefaultStateTolerance);

// Redeclares the tensor factorization of rho; the factors must multiply to
// rho's Hamiltonian.
DensityMatrix with_factors(const DensityMatrix& rho, std::vector<Hamiltonian> factors);

DensityMatrix tensor_state(const DensityMatrix& a, const DensityMatrix& b);
DensityMatrix tensor_power(const DensityMatrix& rho, std::size_t copies);

// Marginal on the listed factors, in the order given.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep);
DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<std::size_t> keep);

// e^{-iHt} rho e^{iHt}
DensityMatrix time_evolve(const DensityMatrix& rho, double t);

struct GibbsContext {
  double beta;  // may be +infinity
  Hamiltonian hamiltonian;
};

inline constexpr double kInfiniteBeta = std::numeric_limits<double>::infinity();

// e^{-beta H} / Tr e^{-beta H}. beta = +inf gives the uniform mixture over the
// ground levels.
DensityMatrix gibbs_state(const GibbsContext& ctx);
DensityMatrix gibbs_state(const Hamiltonian& h, double beta);

double trace_norm(const DensityMatrix& a, const DensityMatrix& b);

// ||[m, H]||_1 for the diagonal Hamiltonian h.
double commutator_norm(const Matrix& m, const Hamiltonian& h);

// Projector onto (|i> + |j>)/sqrt(2).
DensityMatrix plus_state(std::size_t i, std::size_t j, const Hamiltonian& h);

DensityMatrix basis_state(std::size_t k, const Hamiltonian& h);
DensityMatrix maximally_mixed(const Hamiltonian& h);
DensityMatrix pure_state(const Vector& psi, const Hamiltonian& h);

// Splitting of a matrix into its modes of asymmetry: the component at Delta
// keeps exactly the entries (i, j) with E_i - E_j = Delta.
struct ModeDecomposition {
  std::map<Rational, Matrix> components;
  Hamiltonian hamiltonian;

  Matrix reconstruct() const;
};

// Keys are the gaps of entries that are exactly nonzero; Delta = 0 is always
// present.
ModeDecomposition mode_decompose(const Matrix& m, const Hamiltonian& h);
ModeDecomposition mode_decompose(const DensityMatrix& rho);

}  // namespace qasym
