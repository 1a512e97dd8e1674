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

#include "qasym/random.hpp"

#include <Eigen/QR>

#include <map>
#include <vector>

namespace qasym {

Matrix RandomSource::ginibre(Eigen::Index rows, Eigen::Index cols) {
  Matrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) g(i, j) = Complex(normal(), normal());
  }
  return g;
}

Matrix RandomSource::haar_unitary(Eigen::Index d) {
  Eigen::HouseholderQR<Matrix> qr(ginibre(d, d));
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < d; ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

Matrix RandomSource::energy_preserving_unitary(const Hamiltonian& h) {
  std::map<Rational, std::vector<Eigen::Index>> levels;
  for (std::size_t k = 0; k < h.dimension(); ++k) {
    levels[h.energy(k)].push_back(static_cast<Eigen::Index>(k));
  }
  const auto d = static_cast<Eigen::Index>(h.dimension());
  Matrix u = Matrix::Zero(d, d);
  for (const auto& [energy, idx] : levels) {
    const auto n = static_cast<Eigen::Index>(idx.size());
    const Matrix block = haar_unitary(n);
    for (Eigen::Index a = 0; a < n; ++a) {
      for (Eigen::Index b = 0; b < n; ++b) u(idx[a], idx[b]) = block(a, b);
    }
  }
  return u;
}

DensityMatrix RandomSource::state(const Hamiltonian& h, Eigen::Index rank) {
  const auto d = static_cast<Eigen::Index>(h.dimension());
  if (rank <= 0 || rank > d) rank = d;
  const Matrix g = ginibre(d, rank);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix::unchecked(hermitian_part(rho), h);
}

DensityMatrix RandomSource::incoherent_state(const Hamiltonian& h) {
  const auto d = static_cast<Eigen::Index>(h.dimension());
  Eigen::VectorXd w(d);
  for (Eigen::Index k = 0; k < d; ++k) w(k) = uniform(0.05, 1.0);
  w /= w.sum();
  return DensityMatrix::unchecked(w.cast<Complex>().asDiagonal().toDenseMatrix(), h);
}

}  // namespace qasym
