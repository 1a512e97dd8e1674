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

#include <algorithm>
#include <vector>

#include "qasym/channel.hpp"
#include "qasym/error.hpp"
#include "qasym/protocol.hpp"
#include "qasym/random.hpp"
#include "support/oracles.hpp"

using namespace qasym;
using oracle::ham;
using oracle::qubit;

namespace {

ProtocolSpec declared(std::size_t n, std::size_t m, double eps, double delta) {
  const auto q = qubit();
  return make_protocol(ProtocolChannel::declared(q, n, q, m), eps, delta, maximally_mixed(q));
}

Hamiltonian qubits(std::size_t n) { return tensor_hamiltonian(std::vector<Hamiltonian>(n, qubit())); }

double max_of(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

// A random stage on n -> m qubits. Its target is the first output marginal
// on the given input and its eps the largest measured marginal error.
ProtocolSpec engineered_stage(std::size_t n, std::size_t m, const DensityMatrix& input,
                              std::uint64_t seed, double mix) {
  const Channel raw = random_channel(qubits(n), qubits(m), seed);
  // Pull towards a product of copies of one fixed state so errors stay moderate.
  RandomSource rng(seed + 1);
  const auto fixed = rng.state(qubit());
  const Channel replace = replace_channel(qubits(n), tensor_power(fixed, m));
  const Matrix choi = mix * raw.choi() + (1.0 - mix) * replace.choi();
  const auto ch = Channel::from_choi(choi, qubits(n), qubits(m));
  const auto pc = ProtocolChannel::primitive(ch, qubit(), n, qubit(), m);
  // Provisional protocol with a loose eps, only used to measure the errors.
  const auto probe = make_protocol(pc, 2.0, 1.0, fixed);
  const auto errors = measure_marginal_errors(probe, input);
  const double delta = 1.0 - static_cast<double>(m) / static_cast<double>(n);
  return make_protocol(pc, max_of(errors), delta, fixed);
}

}  // namespace

TEST_CASE("worked composition example") {
  const auto p = compose_marginal_protocols(declared(10, 9, 0.01, 0.1), declared(20, 18, 0.02, 0.1));
  CHECK(p.n == 200);
  CHECK(p.m == 162);
  CHECK(p.eps == 0.22);
  CHECK(p.delta == doctest::Approx(0.19));
  CHECK(static_cast<double>(p.m) / static_cast<double>(p.n) == doctest::Approx(0.81));
  CHECK(static_cast<double>(p.m) / static_cast<double>(p.n) >= (1 - 0.1) * (1 - 0.1) - 1e-12);
  CHECK(p.channel.is_declared());
  CHECK_THROWS_AS(simulate_marginal_protocol(p, maximally_mixed(qubit())), InvalidArgument);
}

TEST_CASE("identity stages leave a protocol unchanged") {
  const auto p1 = declared(10, 9, 0.01, 0.1);
  const auto id = identity_protocol(p1.target);
  CHECK(is_identity_protocol(id));
  CHECK_FALSE(is_identity_protocol(p1));
  for (const auto& p : {compose_marginal_protocols(p1, id), compose_marginal_protocols(id, p1)}) {
    CHECK(p.n == p1.n);
    CHECK(p.m == p1.m);
    CHECK(p.eps == p1.eps);
    CHECK(p.delta == p1.delta);
  }
}

TEST_CASE("composition is associative in its bookkeeping") {
  RandomSource rng(601);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<ProtocolSpec> ps;
    for (int k = 0; k < 3; ++k) {
      const auto n = static_cast<std::size_t>(rng.integer(1, 12));
      const auto m = static_cast<std::size_t>(rng.integer(1, static_cast<std::int64_t>(n)));
      const double delta = 1.0 - static_cast<double>(m) / static_cast<double>(n);
      ps.push_back(declared(n, m, rng.uniform(0.0, 0.05), std::min(1.0, delta + 0.01)));
    }
    const auto left = compose_marginal_protocols(compose_marginal_protocols(ps[0], ps[1]), ps[2]);
    const auto right = compose_marginal_protocols(ps[0], compose_marginal_protocols(ps[1], ps[2]));
    CHECK(left.n == right.n);
    CHECK(left.m == right.m);
    CHECK(left.eps == doctest::Approx(right.eps).epsilon(1e-12));
    // Telescoped worst case: every first-stage error is copied n2 n3 times.
    const double telescoped = static_cast<double>(ps[1].n * ps[2].n) * ps[0].eps +
                              static_cast<double>(ps[2].n) * ps[1].eps + ps[2].eps;
    CHECK(left.eps <= telescoped + 1e-12);
    CHECK(left.delta == doctest::Approx(right.delta).epsilon(1e-12));
  }
}

TEST_CASE("budget_for_target") {
  const auto b = budget_for_target(0.1, 0.2, 20);
  CHECK(b.eps1 == 0.0025);
  CHECK(b.eps2 == 0.05);
  CHECK(b.delta1 == 0.1);
  CHECK(b.delta2 == 0.1);
  const auto one = budget_for_target(1.0, 0.5, 1);
  CHECK(one.eps1 == 0.5);
  CHECK(one.eps2 == 0.5);

  const auto p = compose_marginal_protocols(declared(4, 4, b.eps1, b.delta1), declared(20, 18, b.eps2, b.delta2));
  CHECK(p.eps <= 0.1);
  CHECK(p.delta <= 0.2);
  CHECK_THROWS_AS(budget_for_target(0.0, 0.1, 2), InvalidArgument);
  CHECK_THROWS_AS(budget_for_target(0.1, 0.1, 0), InvalidArgument);
}

TEST_CASE("make_protocol validates its arguments") {
  const auto q = qubit();
  CHECK_THROWS_AS(make_protocol(ProtocolChannel::declared(q, 2, q, 3), 0.1, 0.5, maximally_mixed(q)), InvalidArgument);
  CHECK_THROWS_AS(make_protocol(ProtocolChannel::declared(q, 10, q, 5), 0.1, 0.1, maximally_mixed(q)), InvalidArgument);
  CHECK_THROWS_AS(make_protocol(ProtocolChannel::declared(q, 2, q, 2), -0.1, 0.0, maximally_mixed(q)), InvalidArgument);
  CHECK_THROWS_AS(make_protocol(ProtocolChannel::declared(q, 2, q, 2), 0.1, 1.5, maximally_mixed(q)), InvalidArgument);
  CHECK_THROWS_AS(make_protocol(ProtocolChannel::declared(q, 2, q, 2), 0.1, 0.0, maximally_mixed(ham({"0", "2"}))),
                  DimensionMismatch);
  CHECK_THROWS_AS(ProtocolChannel::primitive(identity_channel(q), q, 2, q, 2), DimensionMismatch);
  CHECK_THROWS_AS(compose_marginal_protocols(declared(2, 2, 0, 0),
                                             make_protocol(ProtocolChannel::declared(ham({"0", "2"}), 1, ham({"0", "2"}), 1),
                                                           0, 0, maximally_mixed(ham({"0", "2"})))),
                  InvalidArgument);
}

TEST_CASE("simulating simple protocols") {
  RandomSource rng(602);
  const auto rho = rng.state(qubit());

  const auto id = identity_protocol(rho);
  const auto errors = simulate_marginal_protocol(id, rho);
  REQUIRE(errors.size() == 1);
  CHECK(errors[0] == doctest::Approx(0.0));

  const auto dephased = apply(full_dephasing(qubit()), rho);
  const auto per_copy = make_protocol(ProtocolChannel::per_copy(full_dephasing(qubit()), 3), 0.0, 0.0, dephased);
  const auto e3 = simulate_marginal_protocol(per_copy, rho);
  CHECK(e3.size() == 3);
  CHECK(max_of(e3) < 1e-12);

  // Same protocol against the undephased target violates eps = 0.
  const auto wrong = make_protocol(ProtocolChannel::per_copy(full_dephasing(qubit()), 3), 0.0, 0.0, rho);
  CHECK_THROWS_AS(simulate_marginal_protocol(wrong, rho), ProtocolViolation);

  CHECK_THROWS_AS(measure_marginal_errors(per_copy, rho, 4), InvalidArgument);
  CHECK_THROWS_AS(measure_marginal_errors(per_copy, maximally_mixed(ham({"0", "2"}))), DimensionMismatch);
}

TEST_CASE("composite simulation matches the explicit block arrangement") {
  // First stage: a fixed 2 -> 1 channel; second stage: 2 -> 2. On 4 inputs the
  // arrangement is Lambda2 applied to (Lambda1 on copies 0,1) (x) (Lambda1 on 2,3).
  const auto q = qubit();
  const auto l1 = random_channel(qubits(2), q, 11);
  const auto l2 = random_channel(qubits(2), qubits(2), 12);
  const auto p1 = make_protocol(ProtocolChannel::primitive(l1, q, 2, q, 1), 2.0, 0.5, maximally_mixed(q));
  const auto p2 = make_protocol(ProtocolChannel::primitive(l2, q, 2, q, 2), 2.0, 0.0, maximally_mixed(q));
  const auto composed = compose_marginal_protocols(p1, p2);
  CHECK(composed.n == 4);
  CHECK(composed.m == 2);

  RandomSource rng(603);
  const auto rho = rng.state(q);
  const Matrix mid = apply(l1, tensor_power(rho, 2)).matrix();
  const Matrix out = apply_choi(l2.choi(), 4, 4, kron(mid, mid));
  const std::size_t dims[] = {2, 2};
  const auto errors = measure_marginal_errors(composed, rho);
  REQUIRE(errors.size() == 2);
  for (std::size_t k = 0; k < 2; ++k) {
    const std::size_t keep[] = {k};
    const Matrix marginal = partial_trace(out, dims, keep);
    CHECK(errors[k] == doctest::Approx(trace_norm(Matrix(marginal - maximally_mixed(q).matrix()))).epsilon(1e-10));
  }
}

TEST_CASE("composed engineered protocols respect n2 eps1 + eps2") {
  RandomSource rng(604);
  int runs = 0;
  for (std::size_t n1 = 1; n1 <= 2; ++n1)
    for (std::size_t m1 = 1; m1 <= n1; ++m1)
      for (std::size_t n2 = 1; n2 <= 4; ++n2)
        for (std::size_t m2 : {std::size_t{1}, n2}) {
          const auto rho = rng.state(qubit());
          const auto seed = static_cast<std::uint64_t>(1000 + 17 * runs);
          const auto p1 = engineered_stage(n1, m1, rho, seed, rng.uniform(0.05, 0.5));
          const auto p2 = engineered_stage(n2, m2, p1.target, seed + 7, rng.uniform(0.05, 0.5));
          const auto composed = compose_marginal_protocols(p1, p2);
          CHECK(composed.eps == static_cast<double>(n2) * p1.eps + p2.eps);
          const auto errors = simulate_marginal_protocol(composed, rho);
          CHECK(errors.size() == m1 * m2);
          CHECK(max_of(errors) <= static_cast<double>(n2) * p1.eps + p2.eps + 1e-12);
          ++runs;
        }
  CHECK(runs == 24);
}
