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

#include <cstddef>
#include <span>
#include <vector>

#include "qasym/rational.hpp"

namespace qasym {

// Diagonal Hamiltonian in its energy eigenbasis, with exact rational
// energies (k_B = hbar = 1).
class Hamiltonian {
 public:
  explicit Hamiltonian(std::vector<Rational> energies);

  // The one-dimensional Hamiltonian diag(0).
  static Hamiltonian trivial();

  std::size_t dimension() const { return energies_.size(); }
  const Rational& energy(std::size_t k) const { return energies_.at(k); }
  std::span<const Rational> energies() const { return energies_; }

  // E_i - E_j
  Rational gap(std::size_t i, std::size_t j) const { return energies_[i] - energies_[j]; }

  // max_k |E_k|
  double operator_norm() const;

  Eigen::VectorXd diagonal() const;

  bool operator==(const Hamiltonian& other) const { return energies_ == other.energies_; }

 private:
  std::vector<Rational> energies_;
};

// H1 (x) I + I (x) H2. Energies are the pairwise sums, row-major.
Hamiltonian tensor_hamiltonian(const Hamiltonian& h1, const Hamiltonian& h2);

Hamiltonian tensor_hamiltonian(std::span<const Hamiltonian> factors);

}  // namespace qasym
