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

#include <set>

#include "qasym/density_matrix.hpp"
#include "qasym/rational.hpp"

namespace qasym {

inline constexpr double kDefaultCoherenceTolerance = 1e-9;

// Energy gaps E_i - E_j at which a state has a matrix element larger than
// `tolerance` in modulus. Diagonal pairs are included, so 0 is a member for
// every state.
struct CoherenceSet {
  std::set<Rational> deltas;
  double tolerance = kDefaultCoherenceTolerance;

  bool contains(const Rational& delta) const { return deltas.contains(delta); }
  // True when the only available gap is 0.
  bool trivial() const;
  bool subset_of(const CoherenceSet& other) const;
};

// Additive subgroup g*Z of the rationals. g = 0 is the trivial group {0}.
class Lattice {
 public:
  Lattice() = default;
  explicit Lattice(Rational generator);

  const Rational& generator() const { return generator_; }
  bool trivial() const { return generator_ == 0; }

  bool operator==(const Lattice& other) const { return generator_ == other.generator_; }

 private:
  Rational generator_{0};
};

CoherenceSet available_coherences(const DensityMatrix& rho,
                                  double tolerance = kDefaultCoherenceTolerance);

// Subgroup generated by the gaps: g = gcd of |deltas|.
Lattice reachable_lattice(const CoherenceSet& set);

bool lattice_member(const Lattice& lattice, const Rational& x);

// a is a subgroup of b.
bool lattice_subset(const Lattice& a, const Lattice& b);

}  // namespace qasym
