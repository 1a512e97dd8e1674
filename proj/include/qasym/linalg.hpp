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

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qasym {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

Matrix kron(const Matrix& a, const Matrix& b);

// (m + m^dagger) / 2
Matrix hermitian_part(const Matrix& m);

// Largest entrywise modulus of m - m^dagger.
double hermiticity_defect(const Matrix& m);

// Eigenvalues of the Hermitian part of m, ascending.
Eigen::VectorXd hermitian_eigenvalues(const Matrix& m);

// Sum of singular values.
double trace_norm(const Matrix& m);

// Frobenius-nearest positive semidefinite matrix to the Hermitian part of m.
Matrix project_psd(const Matrix& m);

// Matrix square root / inverse square root of a Hermitian PSD matrix.
// Eigenvalues below `cutoff` are dropped in the inverse.
Matrix psd_sqrt(const Matrix& m);
Matrix psd_inverse_sqrt(const Matrix& m, double cutoff = 1e-14);

// Partial trace over a multipartite operator with local dimensions `dims`.
// The result lives on the factors listed in `keep`, in that order.
Matrix partial_trace(const Matrix& m, std::span<const std::size_t> dims,
                     std::span<const std::size_t> keep);

// Reorders tensor factors: factor k of the result is factor order[k] of m.
Matrix permute_subsystems(const Matrix& m, std::span<const std::size_t> dims,
                          std::span<const std::size_t> order);

}  // namespace qasym
