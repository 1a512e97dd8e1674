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

#include "qasym/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "qasym/error.hpp"

namespace qasym {

namespace {

std::size_t product(std::span<const std::size_t> dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

// Row-major strides: the last factor varies fastest.
std::vector<std::size_t> strides_of(std::span<const std::size_t> dims) {
  std::vector<std::size_t> strides(dims.size(), 1);
  for (std::size_t k = dims.size(); k-- > 1;) strides[k - 1] = strides[k] * dims[k];
  return strides;
}

void check_factors(std::size_t rows, std::span<const std::size_t> dims,
                   std::span<const std::size_t> selection, bool require_all) {
  if (product(dims) != rows) {
    throw DimensionMismatch("tensor factor dimensions do not multiply to the matrix size");
  }
  std::set<std::size_t> seen;
  for (std::size_t k : selection) {
    if (k >= dims.size()) throw InvalidArgument("subsystem index out of range");
    if (!seen.insert(k).second) throw InvalidArgument("subsystem listed twice");
  }
  if (require_all && seen.size() != dims.size()) {
    throw InvalidArgument("permutation must list every subsystem");
  }
}

}  // namespace

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix hermitian_part(const Matrix& m) { return (m + m.adjoint()) / 2.0; }

double hermiticity_defect(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

Eigen::VectorXd hermitian_eigenvalues(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(m), Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

double trace_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (m.rows() == m.cols() && hermiticity_defect(m) <= 1e-14 * scale) {
    return hermitian_eigenvalues(m).cwiseAbs().sum();
  }
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().sum();
}

Matrix project_psd(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(m));
  const Eigen::VectorXd clipped = solver.eigenvalues().cwiseMax(0.0);
  const Matrix& v = solver.eigenvectors();
  return v * clipped.cast<Complex>().asDiagonal() * v.adjoint();
}

Matrix psd_sqrt(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(m));
  const Eigen::VectorXd roots = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Matrix& v = solver.eigenvectors();
  return v * roots.cast<Complex>().asDiagonal() * v.adjoint();
}

Matrix psd_inverse_sqrt(const Matrix& m, double cutoff) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(m));
  Eigen::VectorXd inv = solver.eigenvalues();
  for (Eigen::Index k = 0; k < inv.size(); ++k) {
    inv(k) = inv(k) > cutoff ? 1.0 / std::sqrt(inv(k)) : 0.0;
  }
  const Matrix& v = solver.eigenvectors();
  return v * inv.cast<Complex>().asDiagonal() * v.adjoint();
}

Matrix partial_trace(const Matrix& m, std::span<const std::size_t> dims,
                     std::span<const std::size_t> keep) {
  check_factors(static_cast<std::size_t>(m.rows()), dims, keep, false);
  std::vector<std::size_t> traced;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (std::find(keep.begin(), keep.end(), k) == keep.end()) traced.push_back(k);
  }
  const auto strides = strides_of(dims);

  std::vector<std::size_t> kept_dims;
  for (std::size_t k : keep) kept_dims.push_back(dims[k]);
  std::vector<std::size_t> traced_dims;
  for (std::size_t k : traced) traced_dims.push_back(dims[k]);
  const std::size_t d_keep = product(kept_dims);
  const std::size_t d_trace = product(traced_dims);

  // Full index of (kept multi-index a, traced multi-index t).
  auto full_index = [&](std::size_t a, std::size_t t) {
    std::size_t idx = 0;
    for (std::size_t p = keep.size(); p-- > 0;) {
      idx += (a % kept_dims[p]) * strides[keep[p]];
      a /= kept_dims[p];
    }
    for (std::size_t p = traced.size(); p-- > 0;) {
      idx += (t % traced_dims[p]) * strides[traced[p]];
      t /= traced_dims[p];
    }
    return static_cast<Eigen::Index>(idx);
  };

  std::vector<Eigen::Index> rows(d_keep);
  Matrix out = Matrix::Zero(d_keep, d_keep);
  for (std::size_t t = 0; t < d_trace; ++t) {
    for (std::size_t a = 0; a < d_keep; ++a) rows[a] = full_index(a, t);
    out += m(rows, rows);
  }
  return out;
}

Matrix permute_subsystems(const Matrix& m, std::span<const std::size_t> dims,
                          std::span<const std::size_t> order) {
  check_factors(static_cast<std::size_t>(m.rows()), dims, order, true);
  const std::size_t total = product(dims);
  const auto old_strides = strides_of(dims);
  std::vector<std::size_t> new_dims;
  for (std::size_t k : order) new_dims.push_back(dims[k]);

  std::vector<Eigen::Index> source(total);
  for (std::size_t n = 0; n < total; ++n) {
    std::size_t rest = n;
    std::size_t old = 0;
    for (std::size_t p = order.size(); p-- > 0;) {
      old += (rest % new_dims[p]) * old_strides[order[p]];
      rest /= new_dims[p];
    }
    source[n] = static_cast<Eigen::Index>(old);
  }
  return m(source, source);
}

}  // namespace qasym
