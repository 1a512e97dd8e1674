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

#include "qasym/coherence.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "qasym/error.hpp"

namespace qasym {

bool CoherenceSet::trivial() const {
  return std::all_of(deltas.begin(), deltas.end(), [](const Rational& d) { return d == 0; });
}

bool CoherenceSet::subset_of(const CoherenceSet& other) const {
  return std::includes(other.deltas.begin(), other.deltas.end(), deltas.begin(), deltas.end());
}

Lattice::Lattice(Rational generator) : generator_(abs(generator)) {}

CoherenceSet available_coherences(const DensityMatrix& rho, double tolerance) {
  if (!(tolerance >= 0.0)) throw InvalidArgument("coherence threshold must be >= 0");
  CoherenceSet out{{}, tolerance};
  const Matrix& m = rho.matrix();
  const Hamiltonian& h = rho.hamiltonian();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (std::abs(m(i, j)) > tolerance) out.deltas.insert(h.gap(i, j));
    }
  }
  return out;
}

Lattice reachable_lattice(const CoherenceSet& set) {
  std::vector<Rational> values(set.deltas.begin(), set.deltas.end());
  return Lattice(rational_gcd(values));
}

bool lattice_member(const Lattice& lattice, const Rational& x) {
  if (lattice.trivial()) return x == 0;
  return is_integer(Rational(x / lattice.generator()));
}

bool lattice_subset(const Lattice& a, const Lattice& b) {
  if (a.trivial()) return true;
  if (b.trivial()) return false;
  return is_integer(Rational(a.generator() / b.generator()));
}

}  // namespace qasym
