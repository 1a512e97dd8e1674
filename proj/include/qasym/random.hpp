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
#include <random>

#include "qasym/density_matrix.hpp"

namespace qasym {

// Deterministic generators for test instances and the CLI's example files.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  double uniform(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
  }

  // Complex matrix with i.i.d. standard normal real and imaginary parts.
  Matrix ginibre(Eigen::Index rows, Eigen::Index cols);

  // Haar-distributed unitary.
  Matrix haar_unitary(Eigen::Index d);

  // Unitary commuting with the diagonal Hamiltonian: Haar-random on every
  // degenerate energy eigenspace.
  Matrix energy_preserving_unitary(const Hamiltonian& h);

  // Random state of the given rank (0 means full rank), Hilbert-Schmidt
  // style: G G^dagger / Tr.
  DensityMatrix state(const Hamiltonian& h, Eigen::Index rank = 0);

  // Random state diagonal in the energy basis.
  DensityMatrix incoherent_state(const Hamiltonian& h);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace qasym
