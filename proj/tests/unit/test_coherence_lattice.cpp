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

#include <doctest.h>

#include <vector>

#include "qasym/coherence.hpp"
#include "qasym/error.hpp"
#include "qasym/random.hpp"
#include "support/oracles.hpp"

using namespace qasym;
using oracle::ham;
using oracle::qubit;

namespace {

std::set<Rational> deltas(std::initializer_list<Rational> v) { return {v.begin(), v.end()}; }

Rational random_rational(RandomSource& rng, int bound) {
  Rational q(static_cast<long>(rng.integer(-bound, bound)), static_cast<unsigned long>(rng.integer(1, bound)));
  q.canonicalize();
  return q;
}

}  // namespace

TEST_CASE("available_coherences") {
  const auto plus = plus_state(0, 1, qubit());
  CHECK(available_coherences(plus).deltas == deltas({-1, 0, 1}));

  const auto incoherent = validate_state(Matrix::Identity(2, 2) / 2.0, qubit());
  const auto none = available_coherences(incoherent);
  CHECK(none.deltas == deltas({0}));
  CHECK(none.trivial());

  // Degenerate coherence contributes only to the zero mode.
  CHECK(available_coherences(plus_state(1, 2, ham({"0", "1", "1"}))).trivial());

  SUBCASE("threshold") {
    Matrix m = Matrix::Identity(2, 2) / 2.0;
    m(0, 1) = m(1, 0) = 1e-6;
    const auto rho = validate_state(m, qubit());
    CHECK(available_coherences(rho).deltas == deltas({-1, 0, 1}));
    CHECK(available_coherences(rho, 1e-5).trivial());
    CHECK_THROWS_AS(available_coherences(rho, -1.0), InvalidArgument);
  }
}

TEST_CASE("available_coherences matches the energy gaps of every nonzero entry") {
  RandomSource rng(21);
  const auto h = ham({"0", "1/2", "1/3", "2"});
  for (int trial = 0; trial < 30; ++trial) {
    auto rho = rng.state(h, 1 + trial % 4);
    const auto set = available_coherences(rho);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) CHECK(set.contains(h.gap(i, j)));
    const auto mode_keys = mode_decompose(rho).components;
    CHECK(mode_keys.size() == set.deltas.size());
  }
}

TEST_CASE("CoherenceSet::subset_of") {
  const CoherenceSet a{deltas({0, 1, -1})};
  const CoherenceSet b{deltas({0, 1, -1, 2, -2})};
  CHECK(a.subset_of(b));
  CHECK_FALSE(b.subset_of(a));
  CHECK(a.subset_of(a));
}

TEST_CASE("reachable_lattice") {
  CHECK(reachable_lattice(CoherenceSet{deltas({0})}).trivial());
  CHECK(reachable_lattice(CoherenceSet{deltas({-1, 0, 1})}).generator() == 1);
  CHECK(reachable_lattice(CoherenceSet{deltas({Rational(1, 2), Rational(1, 3)})}).generator() == Rational(1, 6));
  CHECK(reachable_lattice(CoherenceSet{deltas({Rational(-4), Rational(6)})}).generator() == 2);

  const auto plus_plus = tensor_state(plus_state(0, 1, qubit()), plus_state(0, 1, qubit()));
  CHECK(available_coherences(plus_plus).deltas == deltas({-2, -1, 0, 1, 2}));
  CHECK(reachable_lattice(available_coherences(plus_plus)) ==
        reachable_lattice(available_coherences(plus_state(0, 1, qubit()))));
}

TEST_CASE("lattice_member and lattice_subset") {
  const Lattice sixth(Rational(1, 6));
  CHECK(lattice_member(sixth, Rational(5, 6)));
  CHECK(lattice_member(sixth, Rational(-7, 3)));
  CHECK(lattice_member(sixth, 0));
  CHECK_FALSE(lattice_member(sixth, Rational(1, 12)));

  const Lattice zero;
  CHECK(lattice_member(zero, 0));
  CHECK_FALSE(lattice_member(zero, Rational(1, 1000)));

  CHECK(lattice_subset(Lattice(2), Lattice(1)));
  CHECK_FALSE(lattice_subset(Lattice(1), Lattice(2)));
  CHECK(lattice_subset(zero, Lattice(3)));
  CHECK(lattice_subset(zero, zero));
  CHECK_FALSE(lattice_subset(Lattice(1), zero));
  CHECK(lattice_subset(Lattice(Rational(1, 2)), Lattice(Rational(-1, 6))));
}

TEST_CASE("reachable_lattice is the smallest positive combination") {
  RandomSource rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 1 + trial % 2;
    std::vector<Rational> gens;
    for (std::size_t g = 0; g < k; ++g) gens.push_back(random_rational(rng, 8));
    CoherenceSet set;
    set.deltas.insert(gens.begin(), gens.end());
    const Lattice lattice = reachable_lattice(set);
    CAPTURE(lattice.generator().get_str());
    // Bezout coefficients for numerators and denominators up to 8 stay below 600.
    CHECK(lattice.generator() == oracle::min_positive_combination(gens, k == 1 ? 1 : 600));
  }
}

TEST_CASE("lattice_member agrees with brute-force enumeration") {
  RandomSource rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 1 + trial % 3;
    std::vector<Rational> gens;
    for (std::size_t g = 0; g < k; ++g) gens.push_back(random_rational(rng, 30));
    CoherenceSet set;
    set.deltas.insert(gens.begin(), gens.end());
    const Lattice lattice = reachable_lattice(set);

    Rational member(0);
    for (const auto& g : gens) member += g * static_cast<long>(rng.integer(-5, 5));
    CHECK(lattice_member(lattice, member) == oracle::representable(gens, member, 50));

    if (!lattice.trivial()) {
      const Rational offset = lattice.generator() * Rational(1, static_cast<unsigned long>(rng.integer(2, 9)));
      const Rational outside = member + offset;
      CHECK_FALSE(lattice_member(lattice, outside));
      CHECK_FALSE(oracle::representable(gens, outside, 50));
    }
  }
}
