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

#include "qasym/hamiltonian.hpp"

#include <algorithm>
#include <cmath>

#include "qasym/error.hpp"

namespace qasym {

Hamiltonian::Hamiltonian(std::vector<Rational> energies) : energies_(std::move(energies)) {
  if (energies_.empty()) throw InvalidArgument("Hamiltonian must have dimension >= 1");
  for (auto& e : energies_) e.canonicalize();
}

Hamiltonian Hamiltonian::trivial() { return Hamiltonian({Rational(0)}); }

double Hamiltonian::operator_norm() const {
  double norm = 0.0;
  for (const auto& e : energies_) norm = std::max(norm, std::abs(to_double(e)));
  return norm;
}

Eigen::VectorXd Hamiltonian::diagonal() const {
  Eigen::VectorXd d(dimension());
  for (std::size_t k = 0; k < dimension(); ++k) d(k) = to_double(energies_[k]);
  return d;
}

Hamiltonian tensor_hamiltonian(const Hamiltonian& h1, const Hamiltonian& h2) {
  std::vector<Rational> sums;
  sums.reserve(h1.dimension() * h2.dimension());
  for (const auto& a : h1.energies()) {
    for (const auto& b : h2.energies()) sums.push_back(a + b);
  }
  return Hamiltonian(std::move(sums));
}

Hamiltonian tensor_hamiltonian(std::span<const Hamiltonian> factors) {
  Hamiltonian h = Hamiltonian::trivial();
  for (const auto& f : factors) h = tensor_hamiltonian(h, f);
  return h;
}

}  // namespace qasym
