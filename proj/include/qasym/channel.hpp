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

#include <cstdint>
#include <span>
#include <vector>

#include "qasym/density_matrix.hpp"

namespace qasym {

inline constexpr double kDefaultChannelTolerance = 1e-9;

// Completely positive trace-preserving map stored as its Choi operator
//
//   C = sum_{ij} |i><j| (x) Lambda(|i><j|),
//
// input index slow, output index fast: entry ((i, a), (j, b)) sits at row
// i * d_out + a, column j * d_out + b. Every function in the library uses
// this layout.
class Channel {
 public:
  // Validates Hermiticity, positivity and trace preservation within `tol`;
  // raises ValidationError (kNotPositive / kNotTracePreserving) otherwise.
  static Channel from_choi(const Matrix& choi, Hamiltonian h_in, Hamiltonian h_out,
                           double tol = kDefaultChannelTolerance);
  static Channel unchecked(Matrix choi, Hamiltonian h_in, Hamiltonian h_out);
  static Channel from_kraus(std::span<const Matrix> kraus, Hamiltonian h_in, Hamiltonian h_out,
                            double tol = kDefaultChannelTolerance);

  const Matrix& choi() const { return choi_; }
  const Hamiltonian& input_hamiltonian() const { return h_in_; }
  const Hamiltonian& output_hamiltonian() const { return h_out_; }
  std::size_t input_dimension() const { return h_in_.dimension(); }
  std::size_t output_dimension() const { return h_out_.dimension(); }

  // Lambda(|i><j|)
  Matrix image_of_unit(std::size_t i, std::size_t j) const;

 private:
  Channel(Matrix choi, Hamiltonian h_in, Hamiltonian h_out);

  Matrix choi_;
  Hamiltonian h_in_;
  Hamiltonian h_out_;
};

// Action of a Choi operator on an input matrix.
Matrix apply_choi(const Matrix& choi, std::size_t d_in, std::size_t d_out, const Matrix& input);

// Tr_out C - I, the trace-preservation defect of a Choi operator.
Matrix trace_preservation_defect(const Matrix& choi, std::size_t d_in, std::size_t d_out);

DensityMatrix apply(const Channel& ch, const DensityMatrix& rho);

Channel identity_channel(const Hamiltonian& h);
// Removes every off-diagonal entry.
Channel full_dephasing(const Hamiltonian& h);
// Multiplies the entry (i, j) by exp(-rate |E_i - E_j|).
Channel mode_dephasing(const Hamiltonian& h, double rate);
// rho -> Tr(rho) * output
Channel replace_channel(const Hamiltonian& h_in, const DensityMatrix& output);
Channel unitary_channel(const Matrix& u, const Hamiltonian& h);
Channel tensor_channel(const Channel& a, const Channel& b);
// second o first
Channel compose(const Channel& second, const Channel& first);

// Largest |C((i,a),(j,b))| over entries with E_i - E_j != E'_a - E'_b.
double covariance_violation(const Channel& ch);

// Time-translation covariance checked exactly, mode by mode: a matrix unit
// at input gap Delta may only produce output entries at gap Delta.
bool is_covariant(const Channel& ch, double tol = kDefaultChannelTolerance);

// ||Lambda(gamma_in) - gamma_out||_1
double gibbs_violation(const Channel& ch, double beta);
bool is_gibbs_preserving(const Channel& ch, double beta, double tol = kDefaultChannelTolerance);

// ||[U, H]||_1 < tol. Raises ValidationError(kNotUnitary) if U is not
// unitary within tol.
bool energy_preserving_unitary_check(const Matrix& u, const Hamiltonian& h,
                                     double tol = kDefaultChannelTolerance);

// rho -> Tr_anc U (rho (x) gamma_anc) U^dagger. U must commute with the joint
// Hamiltonian (ValidationError(kNotEnergyPreserving) otherwise).
Channel thermal_operation(const Hamiltonian& h_sys, const Hamiltonian& h_anc, double beta,
                          const Matrix& u, double tol = kDefaultChannelTolerance);

// Random CPTP map, then every Choi entry that connects mismatched modes is
// zeroed. The zeroing is a pinching with respect to E'_a - E_i, so it keeps
// the Choi operator positive and trace preserving. rank = 0 means full rank
// before pinching. Deterministic in `seed`.
Channel random_covariant_channel(const Hamiltonian& h, std::uint64_t seed);
Channel random_covariant_channel(const Hamiltonian& h_in, const Hamiltonian& h_out,
                                 std::uint64_t seed, Eigen::Index rank = 0);

// Random CPTP map with no symmetry.
Channel random_channel(const Hamiltonian& h_in, const Hamiltonian& h_out, std::uint64_t seed,
                       Eigen::Index rank = 0);

}  // namespace qasym
