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

#include "qasym/density_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qasym/error.hpp"

namespace qasym {

DensityMatrix::DensityMatrix(Matrix matrix, std::vector<Hamiltonian> factors, double tolerance)
    : matrix_(std::move(matrix)),
      factors_(std::move(factors)),
      hamiltonian_(tensor_hamiltonian(factors_)),
      tolerance_(tolerance) {
  if (factors_.empty()) throw InvalidArgument("state needs at least one tensor factor");
  if (matrix_.rows() != matrix_.cols() ||
      static_cast<std::size_t>(matrix_.rows()) != hamiltonian_.dimension()) {
    throw DimensionMismatch("matrix is " + std::to_string(matrix_.rows()) + "x" +
                            std::to_string(matrix_.cols()) + " but the Hamiltonian has dimension " +
                            std::to_string(hamiltonian_.dimension()));
  }
}

DensityMatrix DensityMatrix::unchecked(Matrix matrix, std::vector<Hamiltonian> factors,
                                       double tolerance) {
  return DensityMatrix(std::move(matrix), std::move(factors), tolerance);
}

DensityMatrix DensityMatrix::unchecked(Matrix matrix, const Hamiltonian& hamiltonian,
                                       double tolerance) {
  return DensityMatrix(std::move(matrix), std::vector<Hamiltonian>{hamiltonian}, tolerance);
}

std::vector<std::size_t> DensityMatrix::factor_dimensions() const {
  std::vector<std::size_t> dims;
  for (const auto& f : factors_) dims.push_back(f.dimension());
  return dims;
}

DensityMatrix validate_state(const Matrix& matrix, std::vector<Hamiltonian> factors, double tol) {
  const std::size_t d = tensor_hamiltonian(factors).dimension();
  if (matrix.rows() != matrix.cols() || static_cast<std::size_t>(matrix.rows()) != d) {
    std::ostringstream msg;
    msg << "state matrix is " << matrix.rows() << "x" << matrix.cols()
        << " but the Hamiltonian has dimension " << d;
    throw ValidationError(ValidationFailure::kDimension, 0.0, msg.str());
  }
  const double herm = hermiticity_defect(matrix);
  if (herm > tol) {
    throw ValidationError(ValidationFailure::kHermiticity, herm,
                          "matrix is not Hermitian (defect " + std::to_string(herm) + ")");
  }
  Matrix sym = hermitian_part(matrix);
  const double min_eig = hermitian_eigenvalues(sym).minCoeff();
  if (min_eig < -tol) {
    throw ValidationError(ValidationFailure::kNegativeEigenvalue, min_eig,
                          "matrix has negative eigenvalue " + std::to_string(min_eig));
  }
  const double trace_dev = std::abs(sym.trace().real() - 1.0);
  if (trace_dev > tol) {
    throw ValidationError(ValidationFailure::kTrace, trace_dev,
                          "trace deviates from 1 by " + std::to_string(trace_dev));
  }
  return DensityMatrix::unchecked(std::move(sym), std::move(factors), tol);
}

DensityMatrix validate_state(const Matrix& matrix, const Hamiltonian& h, double tol) {
  return validate_state(matrix, std::vector<Hamiltonian>{h}, tol);
}

DensityMatrix with_factors(const DensityMatrix& rho, std::vector<Hamiltonian> factors) {
  if (!(tensor_hamiltonian(factors) == rho.hamiltonian())) {
    throw DimensionMismatch("declared factors do not multiply to the state's Hamiltonian");
  }
  return DensityMatrix::unchecked(rho.matrix(), std::move(factors), rho.tolerance());
}

DensityMatrix tensor_state(const DensityMatrix& a, const DensityMatrix& b) {
  std::vector<Hamiltonian> factors(a.factors().begin(), a.factors().end());
  factors.insert(factors.end(), b.factors().begin(), b.factors().end());
  return DensityMatrix::unchecked(kron(a.matrix(), b.matrix()), std::move(factors),
                                  std::max(a.tolerance(), b.tolerance()));
}

DensityMatrix tensor_power(const DensityMatrix& rho, std::size_t copies) {
  if (copies == 0) throw InvalidArgument("tensor power needs at least one copy");
  DensityMatrix out = rho;
  for (std::size_t k = 1; k < copies; ++k) out = tensor_state(out, rho);
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep) {
  if (keep.empty()) throw InvalidArgument("partial trace must keep at least one subsystem");
  const auto dims = rho.factor_dimensions();
  Matrix reduced = partial_trace(rho.matrix(), dims, keep);
  std::vector<Hamiltonian> factors;
  for (std::size_t k : keep) factors.push_back(rho.factors()[k]);
  return DensityMatrix::unchecked(std::move(reduced), std::move(factors), rho.tolerance());
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<std::size_t> keep) {
  return partial_trace(rho, std::span<const std::size_t>(keep.begin(), keep.size()));
}

namespace {

Vector phases(const Hamiltonian& h, double t) {
  Vector p(h.dimension());
  for (std::size_t k = 0; k < h.dimension(); ++k) {
    p(k) = std::polar(1.0, -to_double(h.energy(k)) * t);
  }
  return p;
}

}  // namespace

DensityMatrix time_evolve(const DensityMatrix& rho, double t) {
  const Vector p = phases(rho.hamiltonian(), t);
  Matrix out = p.asDiagonal() * rho.matrix() * p.conjugate().asDiagonal();
  return DensityMatrix::unchecked(std::move(out),
                                  std::vector<Hamiltonian>(rho.factors().begin(), rho.factors().end()),
                                  rho.tolerance());
}

DensityMatrix gibbs_state(const GibbsContext& ctx) {
  if (!(ctx.beta >= 0.0)) throw InvalidArgument("inverse temperature must be >= 0");
  const Hamiltonian& h = ctx.hamiltonian;
  const std::size_t d = h.dimension();
  const Rational e_min = *std::min_element(h.energies().begin(), h.energies().end());
  Eigen::VectorXd w(d);
  for (std::size_t k = 0; k < d; ++k) {
    if (std::isinf(ctx.beta)) {
      w(k) = h.energy(k) == e_min ? 1.0 : 0.0;
    } else {
      w(k) = std::exp(-ctx.beta * to_double(h.energy(k) - e_min));
    }
  }
  w /= w.sum();
  return DensityMatrix::unchecked(w.cast<Complex>().asDiagonal().toDenseMatrix(), h);
}

DensityMatrix gibbs_state(const Hamiltonian& h, double beta) {
  return gibbs_state(GibbsContext{beta, h});
}

double trace_norm(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dimension() != b.dimension()) throw DimensionMismatch("trace distance of unequal dimensions");
  return trace_norm(Matrix(a.matrix() - b.matrix()));
}

double commutator_norm(const Matrix& m, const Hamiltonian& h) {
  const Eigen::VectorXcd e = h.diagonal().cast<Complex>();
  Matrix c = e.asDiagonal() * m - m * e.asDiagonal();
  return trace_norm(c);
}

DensityMatrix plus_state(std::size_t i, std::size_t j, const Hamiltonian& h) {
  if (i >= h.dimension() || j >= h.dimension()) throw InvalidArgument("level index out of range");
  if (i == j) throw InvalidArgument("plus state needs two distinct levels");
  Vector psi = Vector::Zero(h.dimension());
  psi(i) = psi(j) = 1.0 / std::sqrt(2.0);
  return pure_state(psi, h);
}

DensityMatrix basis_state(std::size_t k, const Hamiltonian& h) {
  if (k >= h.dimension()) throw InvalidArgument("level index out of range");
  Vector psi = Vector::Zero(h.dimension());
  psi(k) = 1.0;
  return pure_state(psi, h);
}

DensityMatrix maximally_mixed(const Hamiltonian& h) {
  const auto d = static_cast<Eigen::Index>(h.dimension());
  return DensityMatrix::unchecked(Matrix::Identity(d, d) / static_cast<double>(d), h);
}

DensityMatrix pure_state(const Vector& psi, const Hamiltonian& h) {
  if (static_cast<std::size_t>(psi.size()) != h.dimension()) {
    throw DimensionMismatch("state vector does not match the Hamiltonian");
  }
  const double norm = psi.norm();
  if (norm == 0.0) throw InvalidArgument("zero state vector");
  const Vector unit = psi / norm;
  return DensityMatrix::unchecked(unit * unit.adjoint(), h);
}

Matrix ModeDecomposition::reconstruct() const {
  const auto d = static_cast<Eigen::Index>(hamiltonian.dimension());
  Matrix sum = Matrix::Zero(d, d);
  for (const auto& [delta, component] : components) sum += component;
  return sum;
}

ModeDecomposition mode_decompose(const Matrix& m, const Hamiltonian& h) {
  if (static_cast<std::size_t>(m.rows()) != h.dimension() || m.rows() != m.cols()) {
    throw DimensionMismatch("matrix does not match the Hamiltonian");
  }
  const auto d = static_cast<Eigen::Index>(h.dimension());
  ModeDecomposition out{{}, h};
  out.components.emplace(Rational(0), Matrix::Zero(d, d));
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      if (m(i, j) == Complex(0.0)) continue;
      auto [it, inserted] = out.components.try_emplace(h.gap(i, j), Matrix::Zero(d, d));
      it->second(i, j) = m(i, j);
    }
  }
  return out;
}

ModeDecomposition mode_decompose(const DensityMatrix& rho) {
  return mode_decompose(rho.matrix(), rho.hamiltonian());
}

}  // namespace qasym
