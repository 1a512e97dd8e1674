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

#include "qasym/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

namespace qasym {

struct ProtocolChannel::Node {
  std::size_t n;
  std::size_t m;
  Hamiltonian copy_in;
  Hamiltonian copy_out;
  std::optional<Channel> primitive;
  std::shared_ptr<const Node> first;
  std::shared_ptr<const Node> second;
};

namespace {

Hamiltonian power(const Hamiltonian& h, std::size_t copies) {
  const std::vector<Hamiltonian> factors(copies, h);
  return tensor_hamiltonian(factors);
}

}  // namespace

ProtocolChannel ProtocolChannel::primitive(Channel ch, Hamiltonian copy_in, std::size_t n,
                                           Hamiltonian copy_out, std::size_t m) {
  if (n == 0 || m == 0) throw InvalidArgument("protocol needs at least one input and one output");
  if (!(ch.input_hamiltonian() == power(copy_in, n)) ||
      !(ch.output_hamiltonian() == power(copy_out, m))) {
    throw DimensionMismatch("channel does not act on " + std::to_string(n) + " -> " +
                            std::to_string(m) + " copies of the declared systems");
  }
  return ProtocolChannel(std::make_shared<const Node>(
      Node{n, m, std::move(copy_in), std::move(copy_out), std::move(ch), nullptr, nullptr}));
}

ProtocolChannel ProtocolChannel::per_copy(const Channel& single, std::size_t n) {
  if (n == 0) throw InvalidArgument("protocol needs at least one copy");
  Channel ch = single;
  for (std::size_t k = 1; k < n; ++k) ch = tensor_channel(ch, single);
  return primitive(std::move(ch), single.input_hamiltonian(), n, single.output_hamiltonian(), n);
}

ProtocolChannel ProtocolChannel::composite(ProtocolChannel first, ProtocolChannel second) {
  if (!(first.copy_output() == second.copy_input())) {
    throw DimensionMismatch("second stage does not accept the first stage's output system");
  }
  const auto& a = *first.node_;
  const auto& b = *second.node_;
  return ProtocolChannel(std::make_shared<const Node>(Node{a.n * b.n, a.m * b.m, a.copy_in,
                                                           b.copy_out, std::nullopt, first.node_,
                                                           second.node_}));
}

ProtocolChannel ProtocolChannel::declared(Hamiltonian copy_in, std::size_t n, Hamiltonian copy_out,
                                          std::size_t m) {
  if (n == 0 || m == 0) throw InvalidArgument("protocol needs at least one input and one output");
  return ProtocolChannel(std::make_shared<const Node>(
      Node{n, m, std::move(copy_in), std::move(copy_out), std::nullopt, nullptr, nullptr}));
}

std::size_t ProtocolChannel::inputs() const { return node_->n; }
std::size_t ProtocolChannel::outputs() const { return node_->m; }
const Hamiltonian& ProtocolChannel::copy_input() const { return node_->copy_in; }
const Hamiltonian& ProtocolChannel::copy_output() const { return node_->copy_out; }
bool ProtocolChannel::is_composite() const { return node_->first != nullptr; }

bool ProtocolChannel::is_declared() const {
  if (is_composite()) return first().is_declared() || second().is_declared();
  return !node_->primitive.has_value();
}

const Channel& ProtocolChannel::channel() const {
  if (!node_->primitive) throw InvalidArgument("protocol has no single Choi operator");
  return *node_->primitive;
}

ProtocolChannel ProtocolChannel::first() const {
  if (!node_->first) throw InvalidArgument("primitive protocol has no stages");
  return ProtocolChannel(node_->first);
}

ProtocolChannel ProtocolChannel::second() const {
  if (!node_->second) throw InvalidArgument("primitive protocol has no stages");
  return ProtocolChannel(node_->second);
}

ProtocolSpec make_protocol(ProtocolChannel channel, double eps, double delta, DensityMatrix target) {
  const std::size_t n = channel.inputs();
  const std::size_t m = channel.outputs();
  if (m > n) throw InvalidArgument("protocol must not produce more copies than it consumes");
  if (!(eps >= 0.0)) throw InvalidArgument("eps must be >= 0");
  if (!(delta >= 0.0 && delta <= 1.0)) throw InvalidArgument("delta must lie in [0, 1]");
  if (static_cast<double>(m) < (1.0 - delta) * static_cast<double>(n) * (1.0 - 1e-12)) {
    throw InvalidArgument("rate m/n = " + std::to_string(m) + "/" + std::to_string(n) +
                          " is below 1 - delta");
  }
  if (!(target.hamiltonian() == channel.copy_output())) {
    throw DimensionMismatch("target does not live on the protocol's output system");
  }
  return ProtocolSpec{std::move(channel), n, m, eps, delta, std::move(target)};
}

ProtocolSpec identity_protocol(const DensityMatrix& target) {
  const Hamiltonian& h = target.hamiltonian();
  return make_protocol(ProtocolChannel::primitive(identity_channel(h), h, 1, h, 1), 0.0, 0.0,
                       target);
}

bool is_identity_protocol(const ProtocolSpec& p) {
  if (p.n != 1 || p.m != 1 || p.eps != 0.0 || p.delta != 0.0 || p.channel.is_composite() ||
      p.channel.is_declared()) {
    return false;
  }
  const Channel& ch = p.channel.channel();
  const Channel id = identity_channel(ch.input_hamiltonian());
  return ch.input_hamiltonian() == ch.output_hamiltonian() && ch.choi() == id.choi();
}

ProtocolSpec compose_marginal_protocols(const ProtocolSpec& p1, const ProtocolSpec& p2) {
  if (!(p1.target.hamiltonian() == p2.channel.copy_input())) {
    throw InvalidArgument("incompatible protocols: first target does not live on the second "
                          "protocol's input system");
  }
  if (is_identity_protocol(p2)) return p1;
  if (is_identity_protocol(p1)) return p2;
  ProtocolSpec out{ProtocolChannel::composite(p1.channel, p2.channel),
                   p1.n * p2.n,
                   p1.m * p2.m,
                   static_cast<double>(p2.n) * p1.eps + p2.eps,
                   1.0 - (1.0 - p1.delta) * (1.0 - p2.delta),
                   p2.target};
  return out;
}

BudgetSplit budget_for_target(double eps, double delta, std::size_t n2) {
  if (!(eps > 0.0) || !(delta > 0.0)) throw InvalidArgument("eps and delta must be > 0");
  if (n2 == 0) throw InvalidArgument("n2 must be positive");
  return BudgetSplit{eps / (2.0 * static_cast<double>(n2)), eps / 2.0, delta / 2.0, delta / 2.0};
}

namespace {

// Multipartite state whose factors carry stable labels, so stages can pick
// their inputs after earlier stages have reshaped the register.
struct Register {
  Matrix state;
  std::vector<Hamiltonian> factors;
  std::vector<int> labels;
  int next_label = 0;
  std::size_t cap = kDefaultSimulationCap;

  std::vector<std::size_t> dims() const {
    std::vector<std::size_t> d;
    for (const auto& f : factors) d.push_back(f.dimension());
    return d;
  }
};

// Applies ch to the factors labelled `inputs` (in that order); the outputs
// are m fresh factors of system copy_out placed at the front.
std::vector<int> apply_on(Register& reg, const Channel& ch, std::span<const int> inputs,
                          const Hamiltonian& copy_out, std::size_t m) {
  std::vector<std::size_t> order;
  for (int label : inputs) {
    const auto it = std::find(reg.labels.begin(), reg.labels.end(), label);
    order.push_back(static_cast<std::size_t>(it - reg.labels.begin()));
  }
  std::vector<std::size_t> rest;
  for (std::size_t k = 0; k < reg.labels.size(); ++k) {
    if (std::find(order.begin(), order.end(), k) == order.end()) rest.push_back(k);
  }
  std::vector<std::size_t> full_order = order;
  full_order.insert(full_order.end(), rest.begin(), rest.end());
  const Matrix permuted = permute_subsystems(reg.state, reg.dims(), full_order);

  const auto d_a = static_cast<Eigen::Index>(ch.input_dimension());
  const auto d_o = static_cast<Eigen::Index>(ch.output_dimension());
  const Eigen::Index d_r = permuted.rows() / d_a;
  if (static_cast<std::size_t>(d_o * d_r) > reg.cap) {
    throw InvalidArgument("protocol simulation exceeds the dimension cap of " +
                          std::to_string(reg.cap));
  }
  Matrix out = Matrix::Zero(d_o * d_r, d_o * d_r);
  for (Eigen::Index i = 0; i < d_a; ++i) {
    for (Eigen::Index j = 0; j < d_a; ++j) {
      const Matrix rest_block = permuted.block(i * d_r, j * d_r, d_r, d_r);
      if (rest_block.cwiseAbs().maxCoeff() == 0.0) continue;
      out += kron(ch.image_of_unit(static_cast<std::size_t>(i), static_cast<std::size_t>(j)),
                  rest_block);
    }
  }

  std::vector<Hamiltonian> factors(m, copy_out);
  std::vector<int> labels;
  for (std::size_t k = 0; k < m; ++k) labels.push_back(reg.next_label++);
  const std::vector<int> fresh = labels;
  for (std::size_t k : rest) {
    factors.push_back(reg.factors[k]);
    labels.push_back(reg.labels[k]);
  }
  reg.state = std::move(out);
  reg.factors = std::move(factors);
  reg.labels = std::move(labels);
  return fresh;
}

std::vector<int> run(Register& reg, const ProtocolChannel& p, std::span<const int> inputs) {
  if (!p.is_composite()) {
    return apply_on(reg, p.channel(), inputs, p.copy_output(), p.outputs());
  }
  const ProtocolChannel first = p.first();
  const ProtocolChannel second = p.second();
  const std::size_t n1 = first.inputs();
  const std::size_t m1 = first.outputs();
  const std::size_t n2 = second.inputs();

  std::vector<std::vector<int>> vertical;
  for (std::size_t b = 0; b < n2; ++b) {
    vertical.push_back(run(reg, first, inputs.subspan(b * n1, n1)));
  }
  std::vector<int> outputs;
  for (std::size_t i = 0; i < m1; ++i) {
    std::vector<int> horizontal;
    for (std::size_t b = 0; b < n2; ++b) horizontal.push_back(vertical[b][i]);
    const auto produced = run(reg, second, horizontal);
    outputs.insert(outputs.end(), produced.begin(), produced.end());
  }
  return outputs;
}

}  // namespace

std::vector<double> measure_marginal_errors(const ProtocolSpec& p, const DensityMatrix& rho,
                                            std::size_t max_dimension) {
  if (!(rho.hamiltonian() == p.channel.copy_input())) {
    throw DimensionMismatch("input state does not live on the protocol's input system");
  }
  if (p.channel.is_declared()) {
    throw InvalidArgument("protocol is declared without a channel and cannot be simulated");
  }
  double total = 1.0;
  for (std::size_t k = 0; k < p.n; ++k) total *= static_cast<double>(rho.dimension());
  if (total > static_cast<double>(max_dimension)) {
    throw InvalidArgument("input dimension d^n = " + std::to_string(total) +
                          " exceeds the simulation cap of " + std::to_string(max_dimension));
  }

  Register reg;
  reg.cap = max_dimension;
  reg.state = tensor_power(rho, p.n).matrix();
  reg.factors.assign(p.n, rho.hamiltonian());
  std::vector<int> inputs;
  for (std::size_t k = 0; k < p.n; ++k) inputs.push_back(reg.next_label++);
  reg.labels = inputs;

  const std::vector<int> outputs = run(reg, p.channel, inputs);
  const auto dims = reg.dims();
  std::vector<double> errors;
  for (int label : outputs) {
    const auto pos = static_cast<std::size_t>(
        std::find(reg.labels.begin(), reg.labels.end(), label) - reg.labels.begin());
    const std::size_t keep[] = {pos};
    const Matrix marginal = partial_trace(reg.state, dims, keep);
    errors.push_back(trace_norm(Matrix(marginal - p.target.matrix())));
  }
  return errors;
}

std::vector<double> simulate_marginal_protocol(const ProtocolSpec& p, const DensityMatrix& rho,
                                               std::size_t max_dimension) {
  auto errors = measure_marginal_errors(p, rho, max_dimension);
  for (std::size_t k = 0; k < errors.size(); ++k) {
    if (errors[k] > p.eps + 1e-12) {
      throw ProtocolViolation("marginal " + std::to_string(k) + " is " +
                              std::to_string(errors[k]) + " from the target, above eps = " +
                              std::to_string(p.eps));
    }
  }
  return errors;
}

}  // namespace qasym
