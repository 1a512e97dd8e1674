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

#include "qasym/channel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qasym/error.hpp"
#include "qasym/random.hpp"

namespace qasym {

namespace {

Eigen::Index idx(std::size_t v) { return static_cast<Eigen::Index>(v); }

void check_choi_shape(const Matrix& choi, const Hamiltonian& h_in, const Hamiltonian& h_out) {
  const auto d = idx(h_in.dimension() * h_out.dimension());
  if (choi.rows() != d || choi.cols() != d) {
    throw ValidationError(ValidationFailure::kDimension, 0.0,
                          "Choi operator must be " + std::to_string(d) + "x" + std::to_string(d));
  }
}

// Normalizes a positive operator W into a trace-preserving Choi operator.
Matrix normalize_trace_preserving(const Matrix& w, std::size_t d_in, std::size_t d_out) {
  const Matrix y = trace_preservation_defect(w, d_in, d_out) + Matrix::Identity(idx(d_in), idx(d_in));
  const Matrix s = kron(psd_inverse_sqrt(y), Matrix::Identity(idx(d_out), idx(d_out)));
  return hermitian_part(s * w * s);
}

Matrix random_choi(RandomSource& rng, std::size_t d_in, std::size_t d_out, Eigen::Index rank) {
  const auto d = idx(d_in * d_out);
  if (rank <= 0 || rank > d) rank = d;
  // Fewer Kraus operators than d_in / d_out cannot be trace preserving.
  rank = std::max(rank, idx((d_in + d_out - 1) / d_out));
  const Matrix g = rng.ginibre(d, rank);
  return normalize_trace_preserving(g * g.adjoint(), d_in, d_out);
}

}  // namespace

Channel::Channel(Matrix choi, Hamiltonian h_in, Hamiltonian h_out)
    : choi_(std::move(choi)), h_in_(std::move(h_in)), h_out_(std::move(h_out)) {
  check_choi_shape(choi_, h_in_, h_out_);
}

Channel Channel::unchecked(Matrix choi, Hamiltonian h_in, Hamiltonian h_out) {
  return Channel(std::move(choi), std::move(h_in), std::move(h_out));
}

Channel Channel::from_choi(const Matrix& choi, Hamiltonian h_in, Hamiltonian h_out, double tol) {
  check_choi_shape(choi, h_in, h_out);
  const double herm = hermiticity_defect(choi);
  if (herm > tol) {
    throw ValidationError(ValidationFailure::kNotPositive, herm,
                          "Choi operator is not Hermitian (defect " + std::to_string(herm) + ")");
  }
  Matrix sym = hermitian_part(choi);
  const double min_eig = hermitian_eigenvalues(sym).minCoeff();
  if (min_eig < -tol) {
    throw ValidationError(ValidationFailure::kNotPositive, min_eig,
                          "Choi operator has negative eigenvalue " + std::to_string(min_eig));
  }
  const Matrix tp = trace_preservation_defect(sym, h_in.dimension(), h_out.dimension());
  const double tp_dev = tp.size() == 0 ? 0.0 : tp.cwiseAbs().maxCoeff();
  if (tp_dev > tol) {
    throw ValidationError(ValidationFailure::kNotTracePreserving, tp_dev,
                          "Choi operator is not trace preserving (defect " + std::to_string(tp_dev) +
                              ")");
  }
  return Channel(std::move(sym), std::move(h_in), std::move(h_out));
}

Channel Channel::from_kraus(std::span<const Matrix> kraus, Hamiltonian h_in, Hamiltonian h_out,
                            double tol) {
  const auto d_in = idx(h_in.dimension());
  const auto d_out = idx(h_out.dimension());
  Matrix choi = Matrix::Zero(d_in * d_out, d_in * d_out);
  for (const Matrix& k : kraus) {
    if (k.rows() != d_out || k.cols() != d_in) throw DimensionMismatch("Kraus operator has wrong shape");
    for (Eigen::Index i = 0; i < d_in; ++i) {
      for (Eigen::Index j = 0; j < d_in; ++j) {
        choi.block(i * d_out, j * d_out, d_out, d_out) += k.col(i) * k.col(j).adjoint();
      }
    }
  }
  return from_choi(choi, std::move(h_in), std::move(h_out), tol);
}

Matrix Channel::image_of_unit(std::size_t i, std::size_t j) const {
  const auto d_out = idx(output_dimension());
  return choi_.block(idx(i) * d_out, idx(j) * d_out, d_out, d_out);
}

Matrix apply_choi(const Matrix& choi, std::size_t d_in, std::size_t d_out, const Matrix& input) {
  if (input.rows() != idx(d_in) || input.cols() != idx(d_in)) {
    throw DimensionMismatch("input has dimension " + std::to_string(input.rows()) +
                            ", channel expects " + std::to_string(d_in));
  }
  const auto n = idx(d_out);
  Matrix out = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < idx(d_in); ++i) {
    for (Eigen::Index j = 0; j < idx(d_in); ++j) {
      if (input(i, j) == Complex(0.0)) continue;
      out += input(i, j) * choi.block(i * n, j * n, n, n);
    }
  }
  return out;
}

Matrix trace_preservation_defect(const Matrix& choi, std::size_t d_in, std::size_t d_out) {
  const auto n = idx(d_out);
  Matrix y(idx(d_in), idx(d_in));
  for (Eigen::Index i = 0; i < idx(d_in); ++i) {
    for (Eigen::Index j = 0; j < idx(d_in); ++j) y(i, j) = choi.block(i * n, j * n, n, n).trace();
  }
  return y - Matrix::Identity(idx(d_in), idx(d_in));
}

DensityMatrix apply(const Channel& ch, const DensityMatrix& rho) {
  if (!(rho.hamiltonian() == ch.input_hamiltonian())) {
    if (rho.dimension() != ch.input_dimension()) {
      throw DimensionMismatch("state dimension " + std::to_string(rho.dimension()) +
                              " does not match channel input " +
                              std::to_string(ch.input_dimension()));
    }
    throw DimensionMismatch("state Hamiltonian differs from the channel's input Hamiltonian");
  }
  Matrix out = apply_choi(ch.choi(), ch.input_dimension(), ch.output_dimension(), rho.matrix());
  return DensityMatrix::unchecked(hermitian_part(out), ch.output_hamiltonian(), rho.tolerance());
}

Channel identity_channel(const Hamiltonian& h) {
  const auto d = idx(h.dimension());
  return unitary_channel(Matrix::Identity(d, d), h);
}

Channel full_dephasing(const Hamiltonian& h) {
  const auto d = idx(h.dimension());
  Matrix choi = Matrix::Zero(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i) choi(i * d + i, i * d + i) = 1.0;
  return Channel::unchecked(std::move(choi), h, h);
}

Channel mode_dephasing(const Hamiltonian& h, double rate) {
  if (!(rate >= 0.0)) throw InvalidArgument("dephasing rate must be >= 0");
  const auto d = idx(h.dimension());
  Matrix choi = Matrix::Zero(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      const double gap = std::abs(to_double(h.gap(i, j)));
      choi(i * d + i, j * d + j) = std::exp(-rate * gap);
    }
  }
  return Channel::unchecked(std::move(choi), h, h);
}

Channel replace_channel(const Hamiltonian& h_in, const DensityMatrix& output) {
  const auto d = idx(h_in.dimension());
  return Channel::unchecked(kron(Matrix::Identity(d, d), output.matrix()), h_in,
                            output.hamiltonian());
}

Channel unitary_channel(const Matrix& u, const Hamiltonian& h) {
  const Matrix kraus[] = {u};
  return Channel::from_kraus(kraus, h, h);
}

Channel tensor_channel(const Channel& a, const Channel& b) {
  const std::size_t ai = a.input_dimension(), ao = a.output_dimension();
  const std::size_t bi = b.input_dimension(), bo = b.output_dimension();
  const auto out_dim = idx(ao * bo);
  Matrix choi(idx(ai * bi) * out_dim, idx(ai * bi) * out_dim);
  for (std::size_t i1 = 0; i1 < ai; ++i1) {
    for (std::size_t j1 = 0; j1 < ai; ++j1) {
      const Matrix a_block = a.image_of_unit(i1, j1);
      for (std::size_t i2 = 0; i2 < bi; ++i2) {
        for (std::size_t j2 = 0; j2 < bi; ++j2) {
          const auto row = idx(i1 * bi + i2) * out_dim;
          const auto col = idx(j1 * bi + j2) * out_dim;
          choi.block(row, col, out_dim, out_dim) = kron(a_block, b.image_of_unit(i2, j2));
        }
      }
    }
  }
  return Channel::unchecked(std::move(choi),
                            tensor_hamiltonian(a.input_hamiltonian(), b.input_hamiltonian()),
                            tensor_hamiltonian(a.output_hamiltonian(), b.output_hamiltonian()));
}

Channel compose(const Channel& second, const Channel& first) {
  if (!(first.output_hamiltonian() == second.input_hamiltonian())) {
    throw DimensionMismatch("composed channels do not share the intermediate Hamiltonian");
  }
  const std::size_t d_in = first.input_dimension();
  const auto d_out = idx(second.output_dimension());
  Matrix choi(idx(d_in) * d_out, idx(d_in) * d_out);
  for (std::size_t i = 0; i < d_in; ++i) {
    for (std::size_t j = 0; j < d_in; ++j) {
      choi.block(idx(i) * d_out, idx(j) * d_out, d_out, d_out) =
          apply_choi(second.choi(), second.input_dimension(), second.output_dimension(),
                     first.image_of_unit(i, j));
    }
  }
  return Channel::unchecked(std::move(choi), first.input_hamiltonian(),
                            second.output_hamiltonian());
}

double covariance_violation(const Channel& ch) {
  const Hamiltonian& hi = ch.input_hamiltonian();
  const Hamiltonian& ho = ch.output_hamiltonian();
  const std::size_t d_out = ho.dimension();
  double worst = 0.0;
  for (std::size_t i = 0; i < hi.dimension(); ++i) {
    for (std::size_t j = 0; j < hi.dimension(); ++j) {
      const Rational gap_in = hi.gap(i, j);
      for (std::size_t a = 0; a < d_out; ++a) {
        for (std::size_t b = 0; b < d_out; ++b) {
          if (ho.gap(a, b) == gap_in) continue;
          worst = std::max(worst, std::abs(ch.choi()(idx(i * d_out + a), idx(j * d_out + b))));
        }
      }
    }
  }
  return worst;
}

bool is_covariant(const Channel& ch, double tol) { return covariance_violation(ch) <= tol; }

double gibbs_violation(const Channel& ch, double beta) {
  const DensityMatrix in = gibbs_state(ch.input_hamiltonian(), beta);
  const DensityMatrix out = gibbs_state(ch.output_hamiltonian(), beta);
  return trace_norm(apply(ch, in), out);
}

bool is_gibbs_preserving(const Channel& ch, double beta, double tol) {
  return gibbs_violation(ch, beta) < tol;
}

bool energy_preserving_unitary_check(const Matrix& u, const Hamiltonian& h, double tol) {
  const auto d = idx(h.dimension());
  if (u.rows() != d || u.cols() != d) throw DimensionMismatch("unitary does not match the Hamiltonian");
  const double unitarity = (u.adjoint() * u - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (unitarity > tol) {
    throw ValidationError(ValidationFailure::kNotUnitary, unitarity,
                          "matrix is not unitary (defect " + std::to_string(unitarity) + ")");
  }
  return commutator_norm(u, h) < tol;
}

Channel thermal_operation(const Hamiltonian& h_sys, const Hamiltonian& h_anc, double beta,
                          const Matrix& u, double tol) {
  const Hamiltonian joint = tensor_hamiltonian(h_sys, h_anc);
  if (!energy_preserving_unitary_check(u, joint, tol)) {
    const double c = commutator_norm(u, joint);
    throw ValidationError(ValidationFailure::kNotEnergyPreserving, c,
                          "unitary does not commute with the joint Hamiltonian (||[U,H]||_1 = " +
                              std::to_string(c) + ")");
  }
  const Matrix gamma_anc = gibbs_state(h_anc, beta).matrix();
  const auto d_s = idx(h_sys.dimension());
  const std::size_t dims[] = {h_sys.dimension(), h_anc.dimension()};
  const std::size_t keep[] = {0};
  Matrix choi(d_s * d_s, d_s * d_s);
  for (Eigen::Index i = 0; i < d_s; ++i) {
    for (Eigen::Index j = 0; j < d_s; ++j) {
      Matrix unit = Matrix::Zero(d_s, d_s);
      unit(i, j) = 1.0;
      const Matrix evolved = u * kron(unit, gamma_anc) * u.adjoint();
      choi.block(i * d_s, j * d_s, d_s, d_s) = partial_trace(evolved, dims, keep);
    }
  }
  return Channel::from_choi(choi, h_sys, h_sys, tol);
}

Channel random_covariant_channel(const Hamiltonian& h, std::uint64_t seed) {
  return random_covariant_channel(h, h, seed);
}

Channel random_covariant_channel(const Hamiltonian& h_in, const Hamiltonian& h_out,
                                 std::uint64_t seed, Eigen::Index rank) {
  RandomSource rng(seed);
  const std::size_t d_in = h_in.dimension();
  const std::size_t d_out = h_out.dimension();
  Matrix choi = random_choi(rng, d_in, d_out, rank);
  for (std::size_t i = 0; i < d_in; ++i) {
    for (std::size_t j = 0; j < d_in; ++j) {
      const Rational gap_in = h_in.gap(i, j);
      for (std::size_t a = 0; a < d_out; ++a) {
        for (std::size_t b = 0; b < d_out; ++b) {
          if (h_out.gap(a, b) != gap_in) choi(idx(i * d_out + a), idx(j * d_out + b)) = 0.0;
        }
      }
    }
  }
  try {
    return Channel::from_choi(choi, h_in, h_out);
  } catch (const ValidationError& e) {
    throw Error(std::string("random covariant channel failed validation: ") + e.what());
  }
}

Channel random_channel(const Hamiltonian& h_in, const Hamiltonian& h_out, std::uint64_t seed,
                       Eigen::Index rank) {
  RandomSource rng(seed);
  return Channel::from_choi(random_choi(rng, h_in.dimension(), h_out.dimension(), rank), h_in,
                            h_out);
}

}  // namespace qasym
