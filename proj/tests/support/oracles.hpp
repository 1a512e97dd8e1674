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

// Independent reference computations used to freeze expected values. None of
// these call into the library routines they are used to check.

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "qasym/density_matrix.hpp"
#include "qasym/rational.hpp"

namespace qasym::oracle {

inline Hamiltonian qubit() { return Hamiltonian({Rational(0), Rational(1)}); }

inline Hamiltonian ham(std::initializer_list<const char*> energies) {
  std::vector<Rational> e;
  for (const char* s : energies) e.emplace_back(Rational(s, 10));
  return Hamiltonian(std::move(e));
}

// Smallest positive |sum_k c_k g_k| over integer coefficients |c_k| <= bound,
// by exhaustive enumeration. Returns 0 if every combination vanishes.
// Smallest positive |sum c_k g_k| with |c_k| <= bound. The last coefficient
// is chosen optimally for each assignment of the others.
inline Rational min_positive_combination(const std::vector<Rational>& generators, int bound) {
  std::optional<Rational> best;
  const auto consider = [&](Rational sum) {
    if (sum < 0) sum = -sum;
    if (sum > 0 && (!best || sum < *best)) best = sum;
  };
  const Rational& last = generators.back();
  std::vector<int> c(generators.size() - 1, -bound);
  while (true) {
    Rational partial(0);
    for (std::size_t k = 0; k < c.size(); ++k) partial += generators[k] * c[k];
    if (last == 0) {
      consider(partial);
    } else {
      const Rational t = -partial / last;
      mpz_class lo;
      mpz_fdiv_q(lo.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
      for (long shift = -1; shift <= 2; ++shift) {
        const mpz_class cand = lo + shift;
        if (abs(cand) <= bound) consider(partial + last * Rational(cand));
      }
    }
    std::size_t k = 0;
    while (k < c.size() && c[k] == bound) c[k++] = -bound;
    if (k == c.size()) break;
    ++c[k];
  }
  return best.value_or(Rational(0));
}

inline bool representable(const std::vector<Rational>& generators, const Rational& x, int bound) {
  if (generators.empty()) return x == 0;
  const Rational& last = generators.back();
  std::vector<int> c(generators.size() - 1, -bound);
  while (true) {
    Rational partial(0);
    for (std::size_t k = 0; k < c.size(); ++k) partial += generators[k] * c[k];
    const Rational rest = x - partial;
    if (last == 0) {
      if (rest == 0) return true;
    } else {
      Rational q = rest / last;
      if (q.get_den() == 1 && abs(q) <= bound) return true;
    }
    std::size_t k = 0;
    while (k < c.size() && c[k] == bound) c[k++] = -bound;
    if (k == c.size()) break;
    ++c[k];
  }
  return false;
}

// Entry-by-entry Kronecker product.
inline Matrix kron_entries(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

// Bipartite partial traces by direct index contraction.
inline Matrix trace_out_second(const Matrix& m, Eigen::Index d1, Eigen::Index d2) {
  Matrix out = Matrix::Zero(d1, d1);
  for (Eigen::Index a = 0; a < d1; ++a)
    for (Eigen::Index b = 0; b < d1; ++b)
      for (Eigen::Index t = 0; t < d2; ++t) out(a, b) += m(a * d2 + t, b * d2 + t);
  return out;
}

inline Matrix trace_out_first(const Matrix& m, Eigen::Index d1, Eigen::Index d2) {
  Matrix out = Matrix::Zero(d2, d2);
  for (Eigen::Index a = 0; a < d2; ++a)
    for (Eigen::Index b = 0; b < d2; ++b)
      for (Eigen::Index t = 0; t < d1; ++t) out(a, b) += m(t * d2 + a, t * d2 + b);
  return out;
}

// Sum_k K rho K^dagger.
inline Matrix apply_kraus(const std::vector<Matrix>& kraus, const Matrix& rho) {
  Matrix out = Matrix::Zero(kraus.front().rows(), kraus.front().rows());
  for (const auto& k : kraus) out += k * rho * k.adjoint();
  return out;
}

// QFI through the symmetric logarithmic derivative: solve
// (L rho + rho L) / 2 = -i [H, rho] as a linear system and return Tr(rho L^2).
// Needs a full-rank rho.
inline double qfi_via_sld(const Matrix& rho, const Eigen::VectorXd& energies) {
  const Eigen::Index d = rho.rows();
  const Matrix h = energies.cast<std::complex<double>>().asDiagonal();
  const Matrix drho = std::complex<double>(0, -1) * (h * rho - rho * h);
  const Matrix id = Matrix::Identity(d, d);
  // vec(L rho) = (rho^T (x) I) vec(L), vec(rho L) = (I (x) rho) vec(L), column-major vec.
  const Matrix lhs = 0.5 * (kron_entries(rho.transpose(), id) + kron_entries(id, rho));
  const Eigen::Map<const Vector> rhs(drho.data(), d * d);
  const Vector l = lhs.fullPivLu().solve(Vector(rhs));
  const Eigen::Map<const Matrix> sld(l.data(), d, d);
  return (rho * sld * sld).trace().real();
}

// Variance formula 4 Var(H) for a pure state.
inline double pure_state_qfi(const Vector& psi, const Eigen::VectorXd& energies) {
  double m1 = 0, m2 = 0;
  for (Eigen::Index k = 0; k < psi.size(); ++k) {
    const double p = std::norm(psi(k));
    m1 += p * energies(k);
    m2 += p * energies(k) * energies(k);
  }
  return 4.0 * (m2 - m1 * m1);
}

// Distributions' classical KL divergence in nats.
inline double kl(const std::vector<double>& p, const std::vector<double>& q) {
  double s = 0;
  for (std::size_t k = 0; k < p.size(); ++k)
    if (p[k] > 0) s += p[k] * std::log(p[k] / q[k]);
  return s;
}

}  // namespace qasym::oracle
