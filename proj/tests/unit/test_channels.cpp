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

#include <cmath>
#include <vector>

#include "qasym/channel.hpp"
#include "qasym/error.hpp"
#include "qasym/random.hpp"
#include "support/oracles.hpp"

using namespace qasym;
using oracle::ham;
using oracle::qubit;

namespace {

bool close(const Matrix& a, const Matrix& b, double tol = 1e-10) {
  return a.rows() == b.rows() && a.cols() == b.cols() && (a - b).cwiseAbs().maxCoeff() <= tol;
}

Matrix hadamard() {
  Matrix h(2, 2);
  h << 1, 1, 1, -1;
  return h / std::sqrt(2.0);
}

Matrix swap_gate() {
  Matrix s = Matrix::Zero(4, 4);
  s(0, 0) = s(1, 2) = s(2, 1) = s(3, 3) = 1;
  return s;
}

// Choi operator assembled directly from its definition.
Matrix choi_oracle(const std::vector<Matrix>& kraus, Eigen::Index d_in) {
  const Eigen::Index d_out = kraus.front().rows();
  Matrix c = Matrix::Zero(d_in * d_out, d_in * d_out);
  for (Eigen::Index i = 0; i < d_in; ++i)
    for (Eigen::Index j = 0; j < d_in; ++j) {
      Matrix unit = Matrix::Zero(d_in, d_in);
      unit(i, j) = 1;
      c.block(i * d_out, j * d_out, d_out, d_out) = oracle::apply_kraus(kraus, unit);
    }
  return c;
}

// e^{-iHt} X e^{iHt}
Matrix evolve(const Matrix& x, const Hamiltonian& h, double t) {
  Vector phase(static_cast<Eigen::Index>(h.dimension()));
  for (std::size_t k = 0; k < h.dimension(); ++k)
    phase(static_cast<Eigen::Index>(k)) = std::polar(1.0, -to_double(h.energy(k)) * t);
  return phase.asDiagonal() * x * phase.conjugate().asDiagonal();
}

}  // namespace

TEST_CASE("from_kraus builds the Choi operator with the input index first") {
  RandomSource rng(201);
  const auto h_in = ham({"0", "1", "2"});
  const auto h_out = qubit();
  // Random isometry split into Kraus operators.
  const Matrix v = rng.haar_unitary(6).leftCols(3);
  std::vector<Matrix> kraus{v.topRows(2), v.middleRows(2, 2), v.bottomRows(2)};
  const auto ch = Channel::from_kraus(kraus, h_in, h_out);
  CHECK(close(ch.choi(), choi_oracle(kraus, 3)));
  for (int trial = 0; trial < 10; ++trial) {
    const auto rho = rng.state(h_in);
    CHECK(close(apply(ch, rho).matrix(), oracle::apply_kraus(kraus, rho.matrix())));
  }
  CHECK(close(ch.image_of_unit(0, 2), oracle::apply_kraus(kraus, [] {
          Matrix u = Matrix::Zero(3, 3);
          u(0, 2) = 1;
          return u;
        }())));
}

TEST_CASE("from_choi reports distinct failures") {
  const auto h = qubit();
  const Matrix good = identity_channel(h).choi();
  CHECK_NOTHROW(Channel::from_choi(good, h, h));

  try {
    Channel::from_choi(2.0 * good, h, h);
    FAIL("expected failure");
  } catch (const ValidationError& e) {
    CHECK(e.failure() == ValidationFailure::kNotTracePreserving);
  }
  try {
    Matrix bad = good;
    bad(0, 0) = -0.5;
    bad(3, 3) = 2.5;
    Channel::from_choi(bad, h, h);
    FAIL("expected failure");
  } catch (const ValidationError& e) {
    CHECK(e.failure() == ValidationFailure::kNotPositive);
  }
  CHECK_THROWS_AS(Channel::from_choi(Matrix::Identity(3, 3), h, h), ValidationError);
}

TEST_CASE("apply requires the channel's input Hamiltonian") {
  const auto ch = identity_channel(qubit());
  CHECK_THROWS_AS(apply(ch, basis_state(0, ham({"0", "2"}))), DimensionMismatch);
  CHECK_THROWS_AS(apply(ch, basis_state(0, ham({"0", "1", "2"}))), DimensionMismatch);
}

TEST_CASE("standard channels") {
  RandomSource rng(202);
  const auto h = ham({"0", "1", "5/2"});
  const auto rho = rng.state(h);

  CHECK(close(apply(identity_channel(h), rho).matrix(), rho.matrix()));

  const Matrix dephased = apply(full_dephasing(h), rho).matrix();
  CHECK(close(dephased, Matrix(rho.matrix().diagonal().asDiagonal())));

  const double rate = 0.7;
  const Matrix damped = apply(mode_dephasing(h, rate), rho).matrix();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      const double factor = std::exp(-rate * std::abs(to_double(h.gap(i, j))));
      CHECK(std::abs(damped(i, j) - factor * rho.matrix()(i, j)) < 1e-12);
    }

  const auto target = rng.state(qubit());
  const auto replace = replace_channel(h, target);
  CHECK(replace.output_hamiltonian() == qubit());
  CHECK(close(apply(replace, rho).matrix(), target.matrix()));

  const Matrix u = rng.haar_unitary(3);
  CHECK(close(apply(unitary_channel(u, h), rho).matrix(), u * rho.matrix() * u.adjoint()));
}

TEST_CASE("tensor_channel acts factorwise") {
  RandomSource rng(203);
  const auto a = random_channel(qubit(), ham({"0", "1", "2"}), 1);
  const auto b = random_channel(ham({"0", "3"}), qubit(), 2);
  const auto ab = tensor_channel(a, b);
  CHECK(ab.input_hamiltonian() == tensor_hamiltonian(qubit(), ham({"0", "3"})));
  for (int trial = 0; trial < 10; ++trial) {
    const auto r1 = rng.state(qubit());
    const auto r2 = rng.state(ham({"0", "3"}));
    const Matrix expected = kron(apply(a, r1).matrix(), apply(b, r2).matrix());
    CHECK(close(apply(ab, tensor_state(r1, r2)).matrix(), expected));
  }
  CHECK_NOTHROW(Channel::from_choi(ab.choi(), ab.input_hamiltonian(), ab.output_hamiltonian()));
}

TEST_CASE("compose applies first then second") {
  RandomSource rng(204);
  const auto h = ham({"0", "1", "2"});
  const auto first = random_channel(h, qubit(), 3);
  const auto second = random_channel(qubit(), h, 4);
  const auto both = compose(second, first);
  for (int trial = 0; trial < 10; ++trial) {
    const auto rho = rng.state(h);
    CHECK(close(apply(both, rho).matrix(), apply(second, apply(first, rho)).matrix()));
  }
  CHECK_THROWS_AS(compose(first, first), DimensionMismatch);
}

TEST_CASE("covariance of reference channels") {
  const auto q = qubit();
  CHECK(is_covariant(identity_channel(q)));
  CHECK(is_covariant(full_dephasing(q)));
  CHECK(is_covariant(mode_dephasing(q, 0.3)));
  CHECK(is_covariant(replace_channel(q, basis_state(1, q))));
  CHECK_FALSE(is_covariant(replace_channel(q, plus_state(0, 1, q))));

  const auto had = unitary_channel(hadamard(), q);
  CHECK_FALSE(is_covariant(had));
  CHECK(covariance_violation(had) == doctest::Approx(0.5));

  const auto qq = tensor_hamiltonian(q, q);
  CHECK(is_covariant(unitary_channel(swap_gate(), qq)));
  CHECK(energy_preserving_unitary_check(swap_gate(), qq));
  CHECK_FALSE(energy_preserving_unitary_check(kron(hadamard(), hadamard()), qq));
  CHECK_THROWS_AS(energy_preserving_unitary_check(2.0 * swap_gate(), qq), ValidationError);
}

TEST_CASE("is_covariant agrees with sampled time-translation commutation") {
  RandomSource rng(205);
  const auto h_in = ham({"0", "1", "1", "5/2"});
  const auto h_out = ham({"0", "3/2", "1"});
  for (int trial = 0; trial < 20; ++trial) {
    const bool make_covariant = trial % 2 == 0;
    const auto ch = make_covariant ? random_covariant_channel(h_in, h_out, 300 + trial)
                                   : random_channel(h_in, h_out, 300 + trial);
    double worst = 0.0;
    for (int sample = 0; sample < 20; ++sample) {
      const double t = rng.uniform(-20, 20);
      const Matrix rho = rng.state(h_in).matrix();
      const Matrix lhs = apply_choi(ch.choi(), 4, 3, evolve(rho, h_in, t));
      const Matrix rhs = evolve(apply_choi(ch.choi(), 4, 3, rho), h_out, t);
      worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
    }
    CAPTURE(trial);
    CHECK(is_covariant(ch) == make_covariant);
    CHECK((worst < 1e-9) == make_covariant);
  }
}

TEST_CASE("random_covariant_channel produces valid covariant channels") {
  const auto h = ham({"0", "1/2", "1", "2"});
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto ch = random_covariant_channel(h, seed);
    CHECK(is_covariant(ch));
    CHECK_NOTHROW(Channel::from_choi(ch.choi(), h, h));
  }
  const auto a = random_covariant_channel(h, 7);
  const auto b = random_covariant_channel(h, 7);
  CHECK(a.choi() == b.choi());
}

TEST_CASE("thermal operations are covariant and Gibbs preserving") {
  RandomSource rng(206);
  const auto h_sys = ham({"0", "1"});
  const auto h_anc = ham({"0", "1", "2"});
  const auto joint = tensor_hamiltonian(h_sys, h_anc);
  for (int trial = 0; trial < 20; ++trial) {
    const double beta = rng.uniform(0.0, 3.0);
    const auto ch = thermal_operation(h_sys, h_anc, beta, rng.energy_preserving_unitary(joint));
    CHECK(is_covariant(ch, 1e-9));
    CHECK(is_gibbs_preserving(ch, beta, 1e-9));
  }
  CHECK_THROWS_AS(thermal_operation(h_sys, h_sys, 1.0, kron(hadamard(), hadamard())), ValidationError);

  // The qubit swap with a thermal ancilla swaps in the Gibbs state.
  const auto swap = thermal_operation(h_sys, h_sys, 0.5, swap_gate());
  CHECK(close(apply(swap, plus_state(0, 1, h_sys)).matrix(), gibbs_state(h_sys, 0.5).matrix()));
}

TEST_CASE("Gibbs preservation distinguishes channels") {
  const auto q = qubit();
  CHECK(is_gibbs_preserving(identity_channel(q), 1.0));
  CHECK(is_gibbs_preserving(full_dephasing(q), 1.0));
  CHECK_FALSE(is_gibbs_preserving(replace_channel(q, basis_state(1, q)), 1.0));
  CHECK(gibbs_violation(replace_channel(q, basis_state(0, q)), kInfiniteBeta) == doctest::Approx(0.0));
}

TEST_CASE("trace_preservation_defect") {
  const auto ch = random_channel(qubit(), qubit(), 9);
  CHECK(trace_preservation_defect(ch.choi(), 2, 2).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(close(trace_preservation_defect(2.0 * ch.choi(), 2, 2), Matrix::Identity(2, 2), 1e-12));
}
