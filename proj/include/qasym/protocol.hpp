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

#include <cstddef>
#include <memory>
#include <vector>

#include "qasym/channel.hpp"
#include "qasym/error.hpp"

namespace qasym {

// A channel from n copies of one system to m copies of another. Either a
// single Choi operator, or the two-stage block arrangement produced by
// compose_marginal_protocols: the first stage runs on each of n2 blocks of
// n1 consecutive inputs, then the i-th outputs of all blocks are regrouped
// and fed to the second stage.
class ProtocolChannel {
 public:
  // `ch` must map copy_in^(x n) to copy_out^(x m).
  static ProtocolChannel primitive(Channel ch, Hamiltonian copy_in, std::size_t n,
                                   Hamiltonian copy_out, std::size_t m);
  // The same single-copy channel applied to each of n copies.
  static ProtocolChannel per_copy(const Channel& single, std::size_t n);
  static ProtocolChannel composite(ProtocolChannel first, ProtocolChannel second);
  // Shape only, with no channel attached. Supports the composition algebra
  // at sizes where no Choi operator can be stored; cannot be simulated.
  static ProtocolChannel declared(Hamiltonian copy_in, std::size_t n, Hamiltonian copy_out,
                                  std::size_t m);

  std::size_t inputs() const;
  std::size_t outputs() const;
  const Hamiltonian& copy_input() const;
  const Hamiltonian& copy_output() const;

  bool is_composite() const;
  // True when this channel or any stage is declared without a channel.
  bool is_declared() const;
  // Only valid for primitive channels.
  const Channel& channel() const;
  // Only valid for composite channels.
  ProtocolChannel first() const;
  ProtocolChannel second() const;

 private:
  struct Node;
  explicit ProtocolChannel(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Marginal-reduction protocol: the channel maps rho^(x n) to a state on m
// systems whose single-system marginals are each within eps of target, with
// m / n >= 1 - delta.
struct ProtocolSpec {
  ProtocolChannel channel;
  std::size_t n;
  std::size_t m;
  double eps;
  double delta;
  DensityMatrix target;
};

// Checks the static invariants (m <= n, m / n >= 1 - delta, eps >= 0,
// delta in [0, 1], target on the channel's output system).
ProtocolSpec make_protocol(ProtocolChannel channel, double eps, double delta, DensityMatrix target);

// n = m = 1, eps = delta = 0, identity channel.
ProtocolSpec identity_protocol(const DensityMatrix& target);
bool is_identity_protocol(const ProtocolSpec& p);

// Runs p1 then p2. The result has n = n1 n2, m = m1 m2, eps = n2 eps1 + eps2
// and delta = 1 - (1 - delta1)(1 - delta2). p1.target must live on p2's input
// system. Identity stages are dropped.
ProtocolSpec compose_marginal_protocols(const ProtocolSpec& p1, const ProtocolSpec& p2);

struct BudgetSplit {
  double eps1;
  double eps2;
  double delta1;
  double delta2;
};

// eps2 = eps / 2, eps1 = eps / (2 n2), delta1 = delta2 = delta / 2, so the
// composed error n2 eps1 + eps2 equals eps.
BudgetSplit budget_for_target(double eps, double delta, std::size_t n2);

inline constexpr std::size_t kDefaultSimulationCap = 4096;

// Trace distance of every output marginal of channel(rho^(x n)) to the target.
std::vector<double> measure_marginal_errors(const ProtocolSpec& p, const DensityMatrix& rho,
                                            std::size_t max_dimension = kDefaultSimulationCap);

// As measure_marginal_errors, but raises ProtocolViolation when an error
// exceeds p.eps.
std::vector<double> simulate_marginal_protocol(const ProtocolSpec& p, const DensityMatrix& rho,
                                               std::size_t max_dimension = kDefaultSimulationCap);

class ProtocolViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace qasym
