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
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qasym/channel.hpp"
#include "qasym/density_matrix.hpp"
#include "qasym/error.hpp"

namespace qasym {

// JSON problem description shared by all CLI commands.
//
//   {
//     "version": "1",
//     "hamiltonian": ["0", "1"],                  // the "system" Hamiltonian
//     "hamiltonians": {"pair": ["0", "1", "1", "2"]},
//     "states": {
//       "rho": {"matrix": [[[0.5, 0], [0.5, 0]], [[0.5, 0], [0.5, 0]]]},
//       "two": {"factors": ["system", "system"], "matrix": [...]}
//     },
//     "channels": {"id": {"input": "system", "output": "system", "choi": [...]}},
//     "pairs": [["rho", "two"]],
//     "beta": 1.0,
//     "tolerances": {"coherence": 1e-9, "validation": 1e-9, "feasibility": 1e-7}
//   }
//
// Energies are exact rational strings; matrix entries are [re, im] pairs.
// A state names either one Hamiltonian ("hamiltonian", default "system") or
// a list of factors.

inline constexpr const char* kProblemFormatVersion = "1";
inline constexpr const char* kSystemHamiltonian = "system";

enum class ParseMode { kStrict, kLenient };

struct Tolerances {
  std::optional<double> coherence;
  std::optional<double> validation;
  std::optional<double> feasibility;

  bool operator==(const Tolerances&) const = default;
};

struct StateEntry {
  Matrix matrix;
  std::vector<std::string> factors;

  bool operator==(const StateEntry& other) const;
};

struct ChannelEntry {
  Matrix choi;
  std::string input;
  std::string output;

  bool operator==(const ChannelEntry& other) const;
};

struct ProblemFile {
  std::string version = kProblemFormatVersion;
  std::map<std::string, Hamiltonian> hamiltonians;
  std::map<std::string, StateEntry> states;
  std::map<std::string, ChannelEntry> channels;
  std::vector<std::pair<std::string, std::string>> pairs;
  std::optional<double> beta;
  Tolerances tolerances;

  bool operator==(const ProblemFile& other) const;

  const Hamiltonian& hamiltonian(const std::string& name) const;
  Hamiltonian state_hamiltonian(const StateEntry& entry) const;
};

class ProblemFileError : public Error {
 public:
  // line is 1-based; 0 when no position is known.
  ProblemFileError(const std::string& message, std::size_t line);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

ProblemFile parse_problem(std::string_view text, ParseMode mode = ParseMode::kStrict);
ProblemFile load_problem(const std::string& path, ParseMode mode = ParseMode::kStrict);
std::string serialize_problem(const ProblemFile& problem);

// Validated objects built from named entries. Unknown names raise
// InvalidArgument; physical violations raise ValidationError.
DensityMatrix problem_state(const ProblemFile& problem, const std::string& name, double tol);
Channel problem_channel(const ProblemFile& problem, const std::string& name, double tol);

// Random but deterministic problem with a few states, a covariant channel
// and a pair list.
ProblemFile example_problem(std::uint64_t seed);

}  // namespace qasym
