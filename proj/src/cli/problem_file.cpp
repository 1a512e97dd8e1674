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

#include "qasym/problem_file.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qasym/random.hpp"
#include "qasym/rational.hpp"

namespace qasym {

namespace {

using Json = nlohmann::ordered_json;
using Path = std::vector<std::string>;

std::size_t line_at(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

// Best-effort source line for a JSON path: follows the object keys in order
// and, when given, the offending string value.
std::size_t locate(std::string_view text, const Path& path, const std::string& value) {
  std::size_t pos = 0;
  bool found = false;
  auto seek = [&](const std::string& token) {
    const std::size_t at = text.find("\"" + token + "\"", pos);
    if (at == std::string_view::npos) return;
    pos = at;
    found = true;
  };
  for (const auto& key : path) {
    if (!key.empty() && std::all_of(key.begin(), key.end(), [](char c) { return c >= '0' && c <= '9'; })) continue;
    seek(key);
  }
  if (!value.empty()) seek(value);
  return found ? line_at(text, pos) : 0;
}

std::string join(const Path& path) {
  std::string out;
  for (const auto& p : path) out += "/" + p;
  return out.empty() ? "/" : out;
}

class Reader {
 public:
  Reader(std::string_view text, ParseMode mode) : text_(text), mode_(mode) {}

  [[noreturn]] void fail(const Path& path, const std::string& message, const std::string& value = {}) const {
    throw ProblemFileError(join(path) + ": " + message, locate(text_, path, value));
  }

  void check_fields(const Json& object, const Path& path, const std::set<std::string>& allowed) const {
    if (!object.is_object()) fail(path, "expected an object");
    if (mode_ == ParseMode::kLenient) return;
    for (const auto& [key, value] : object.items()) {
      if (!allowed.contains(key)) fail(path, "unknown field \"" + key + "\"", key);
    }
  }

  std::string string(const Json& j, const Path& path) const {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
  }

  double number(const Json& j, const Path& path) const {
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
  }

  Hamiltonian hamiltonian(const Json& j, const Path& path) const {
    if (!j.is_array() || j.empty()) fail(path, "expected a non-empty list of rational strings");
    std::vector<Rational> energies;
    for (std::size_t k = 0; k < j.size(); ++k) {
      Path at = path;
      at.push_back(std::to_string(k));
      if (!j[k].is_string()) fail(at, "energies must be rational strings such as \"1/2\"");
      const std::string s = j[k].get<std::string>();
      try {
        energies.push_back(parse_rational(s));
      } catch (const InvalidArgument& e) {
        fail(at, e.what(), s);
      }
    }
    return Hamiltonian(std::move(energies));
  }

  Matrix matrix(const Json& j, const Path& path) const {
    if (!j.is_array() || j.empty()) fail(path, "expected a non-empty list of rows");
    const auto d = static_cast<Eigen::Index>(j.size());
    Matrix m(d, d);
    for (Eigen::Index r = 0; r < d; ++r) {
      Path row_path = path;
      row_path.push_back(std::to_string(r));
      const Json& row = j[static_cast<std::size_t>(r)];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != d) {
        fail(row_path, "matrix must be square with " + std::to_string(d) + " entries per row");
      }
      for (Eigen::Index c = 0; c < d; ++c) {
        Path at = row_path;
        at.push_back(std::to_string(c));
        const Json& entry = row[static_cast<std::size_t>(c)];
        if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number()) {
          fail(at, "matrix entries must be [re, im] number pairs");
        }
        m(r, c) = Complex(entry[0].get<double>(), entry[1].get<double>());
      }
    }
    return m;
  }

  double tolerance(const Json& j, const Path& path, bool allow_zero) const {
    const double v = number(j, path);
    if (allow_zero ? !(v >= 0.0) : !(v > 0.0)) fail(path, "tolerance must be " + std::string(allow_zero ? ">= 0" : "> 0"));
    return v;
  }

 private:
  std::string_view text_;
  ParseMode mode_;
};

Json to_json(const Hamiltonian& h) {
  Json out = Json::array();
  for (const auto& e : h.energies()) out.push_back(to_string(e));
  return out;
}

Json to_json(const Matrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    out.push_back(std::move(row));
  }
  return out;
}

int depth(const Json& j) {
  if (!j.is_array() && !j.is_object()) return 0;
  int d = 0;
  for (const auto& child : j) d = std::max(d, depth(child));
  return d + 1;
}

// Indented output that keeps short arrays (energy lists, matrix rows) on one line.
void pretty(const Json& j, std::ostringstream& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  const std::string close(static_cast<std::size_t>(indent), ' ');
  if (j.is_object() && !j.empty()) {
    out << "{\n";
    std::size_t k = 0;
    for (const auto& [key, value] : j.items()) {
      out << pad << Json(key).dump() << ": ";
      pretty(value, out, indent + 2);
      out << (++k < j.size() ? ",\n" : "\n");
    }
    out << close << "}";
  } else if (j.is_array() && depth(j) > 2) {
    out << "[\n";
    for (std::size_t k = 0; k < j.size(); ++k) {
      out << pad;
      pretty(j[k], out, indent + 2);
      out << (k + 1 < j.size() ? ",\n" : "\n");
    }
    out << close << "]";
  } else {
    out << j.dump(-1, ' ', false, Json::error_handler_t::strict);
  }
}

}  // namespace

ProblemFileError::ProblemFileError(const std::string& message, std::size_t line)
    : Error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

bool StateEntry::operator==(const StateEntry& other) const {
  return factors == other.factors && matrix.rows() == other.matrix.rows() && matrix == other.matrix;
}

bool ChannelEntry::operator==(const ChannelEntry& other) const {
  return input == other.input && output == other.output && choi.rows() == other.choi.rows() &&
         choi == other.choi;
}

bool ProblemFile::operator==(const ProblemFile& other) const {
  return version == other.version && hamiltonians == other.hamiltonians && states == other.states &&
         channels == other.channels && pairs == other.pairs && beta == other.beta &&
         tolerances == other.tolerances;
}

const Hamiltonian& ProblemFile::hamiltonian(const std::string& name) const {
  const auto it = hamiltonians.find(name);
  if (it == hamiltonians.end()) throw InvalidArgument("no Hamiltonian named \"" + name + "\"");
  return it->second;
}

Hamiltonian ProblemFile::state_hamiltonian(const StateEntry& entry) const {
  std::vector<Hamiltonian> factors;
  for (const auto& f : entry.factors) factors.push_back(hamiltonian(f));
  return tensor_hamiltonian(factors);
}

ProblemFile parse_problem(std::string_view text, ParseMode mode) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    std::string message = e.what();
    // Drop the library's "[json.exception.parse_error.101] " prefix.
    if (const auto cut = message.find("] "); cut != std::string::npos) message = message.substr(cut + 2);
    throw ProblemFileError("malformed JSON: " + message, line_at(text, e.byte > 0 ? e.byte - 1 : 0));
  }

  const Reader in(text, mode);
  in.check_fields(doc, {}, {"version", "hamiltonian", "hamiltonians", "states", "channels", "pairs", "beta", "tolerances"});

  ProblemFile p;
  if (doc.contains("version")) {
    p.version = in.string(doc["version"], {"version"});
    if (p.version != kProblemFormatVersion) {
      in.fail({"version"}, "unsupported format version \"" + p.version + "\"", p.version);
    }
  }
  if (!doc.contains("hamiltonian")) in.fail({}, "missing field \"hamiltonian\"");
  p.hamiltonians.emplace(kSystemHamiltonian, in.hamiltonian(doc["hamiltonian"], {"hamiltonian"}));
  if (doc.contains("hamiltonians")) {
    const Json& hs = doc["hamiltonians"];
    if (!hs.is_object()) in.fail({"hamiltonians"}, "expected an object");
    for (const auto& [name, value] : hs.items()) {
      if (name == kSystemHamiltonian) {
        in.fail({"hamiltonians", name}, "\"system\" is reserved for the top-level Hamiltonian");
      }
      p.hamiltonians.emplace(name, in.hamiltonian(value, {"hamiltonians", name}));
    }
  }

  const auto lookup = [&](const Path& path, const std::string& name) -> const Hamiltonian& {
    const auto it = p.hamiltonians.find(name);
    if (it == p.hamiltonians.end()) in.fail(path, "no Hamiltonian named \"" + name + "\"", name);
    return it->second;
  };

  if (!doc.contains("states")) in.fail({}, "missing field \"states\"");
  if (!doc["states"].is_object()) in.fail({"states"}, "expected an object");
  for (const auto& [name, value] : doc["states"].items()) {
    const Path path{"states", name};
    in.check_fields(value, path, {"matrix", "hamiltonian", "factors"});
    StateEntry entry;
    if (value.contains("hamiltonian") && value.contains("factors")) {
      in.fail(path, "give either \"hamiltonian\" or \"factors\", not both");
    }
    if (value.contains("factors")) {
      const Json& f = value["factors"];
      if (!f.is_array() || f.empty()) in.fail(path, "\"factors\" must be a non-empty list of names");
      for (std::size_t k = 0; k < f.size(); ++k) {
        entry.factors.push_back(in.string(f[k], {"states", name, "factors", std::to_string(k)}));
      }
    } else if (value.contains("hamiltonian")) {
      entry.factors.push_back(in.string(value["hamiltonian"], {"states", name, "hamiltonian"}));
    } else {
      entry.factors.push_back(kSystemHamiltonian);
    }
    std::size_t dim = 1;
    for (const auto& f : entry.factors) dim *= lookup(path, f).dimension();
    if (!value.contains("matrix")) in.fail(path, "missing field \"matrix\"");
    entry.matrix = in.matrix(value["matrix"], {"states", name, "matrix"});
    if (static_cast<std::size_t>(entry.matrix.rows()) != dim) {
      in.fail({"states", name, "matrix"}, "matrix has dimension " + std::to_string(entry.matrix.rows()) +
                                              " but its Hamiltonian has dimension " + std::to_string(dim));
    }
    p.states.emplace(name, std::move(entry));
  }

  if (doc.contains("channels")) {
    if (!doc["channels"].is_object()) in.fail({"channels"}, "expected an object");
    for (const auto& [name, value] : doc["channels"].items()) {
      const Path path{"channels", name};
      in.check_fields(value, path, {"choi", "input", "output"});
      ChannelEntry entry;
      entry.input = value.contains("input") ? in.string(value["input"], {"channels", name, "input"})
                                            : std::string(kSystemHamiltonian);
      entry.output = value.contains("output") ? in.string(value["output"], {"channels", name, "output"})
                                              : std::string(kSystemHamiltonian);
      const std::size_t dim = lookup(path, entry.input).dimension() * lookup(path, entry.output).dimension();
      if (!value.contains("choi")) in.fail(path, "missing field \"choi\"");
      entry.choi = in.matrix(value["choi"], {"channels", name, "choi"});
      if (static_cast<std::size_t>(entry.choi.rows()) != dim) {
        in.fail({"channels", name, "choi"}, "Choi matrix has dimension " + std::to_string(entry.choi.rows()) +
                                                ", expected " + std::to_string(dim));
      }
      p.channels.emplace(name, std::move(entry));
    }
  }

  if (doc.contains("pairs")) {
    const Json& pairs = doc["pairs"];
    if (!pairs.is_array()) in.fail({"pairs"}, "expected a list of [rho, sigma] name pairs");
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const Path path{"pairs", std::to_string(k)};
      if (!pairs[k].is_array() || pairs[k].size() != 2) in.fail(path, "expected a [rho, sigma] name pair");
      std::pair<std::string, std::string> pair{in.string(pairs[k][0], path), in.string(pairs[k][1], path)};
      for (const auto& n : {pair.first, pair.second}) {
        if (!p.states.contains(n)) in.fail(path, "no state named \"" + n + "\"", n);
      }
      p.pairs.push_back(std::move(pair));
    }
  }

  if (doc.contains("beta")) {
    const Json& b = doc["beta"];
    if (b.is_string() && b.get<std::string>() == "inf") {
      p.beta = kInfiniteBeta;
    } else {
      const double beta = in.number(b, {"beta"});
      if (!(beta >= 0.0)) in.fail({"beta"}, "beta must be >= 0 or \"inf\"");
      p.beta = beta;
    }
  }

  if (doc.contains("tolerances")) {
    const Json& t = doc["tolerances"];
    in.check_fields(t, {"tolerances"}, {"coherence", "validation", "feasibility"});
    if (t.contains("coherence")) p.tolerances.coherence = in.tolerance(t["coherence"], {"tolerances", "coherence"}, true);
    if (t.contains("validation")) p.tolerances.validation = in.tolerance(t["validation"], {"tolerances", "validation"}, false);
    if (t.contains("feasibility")) p.tolerances.feasibility = in.tolerance(t["feasibility"], {"tolerances", "feasibility"}, false);
  }
  return p;
}

ProblemFile load_problem(const std::string& path, ParseMode mode) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw ProblemFileError("cannot open problem file \"" + path + "\"", 0);
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return parse_problem(buffer.str(), mode);
}

std::string serialize_problem(const ProblemFile& p) {
  Json doc;
  doc["version"] = p.version;
  doc["hamiltonian"] = to_json(p.hamiltonian(kSystemHamiltonian));
  Json extra = Json::object();
  for (const auto& [name, h] : p.hamiltonians) {
    if (name != kSystemHamiltonian) extra[name] = to_json(h);
  }
  if (!extra.empty()) doc["hamiltonians"] = std::move(extra);

  Json states = Json::object();
  for (const auto& [name, s] : p.states) {
    Json entry;
    if (s.factors.size() == 1) {
      entry["hamiltonian"] = s.factors.front();
    } else {
      entry["factors"] = s.factors;
    }
    entry["matrix"] = to_json(s.matrix);
    states[name] = std::move(entry);
  }
  doc["states"] = std::move(states);

  if (!p.channels.empty()) {
    Json channels = Json::object();
    for (const auto& [name, c] : p.channels) {
      channels[name] = Json{{"input", c.input}, {"output", c.output}, {"choi", to_json(c.choi)}};
    }
    doc["channels"] = std::move(channels);
  }
  if (!p.pairs.empty()) {
    Json pairs = Json::array();
    for (const auto& [a, b] : p.pairs) pairs.push_back(Json::array({a, b}));
    doc["pairs"] = std::move(pairs);
  }
  if (p.beta) doc["beta"] = std::isinf(*p.beta) ? Json("inf") : Json(*p.beta);

  Json tol = Json::object();
  if (p.tolerances.coherence) tol["coherence"] = *p.tolerances.coherence;
  if (p.tolerances.validation) tol["validation"] = *p.tolerances.validation;
  if (p.tolerances.feasibility) tol["feasibility"] = *p.tolerances.feasibility;
  if (!tol.empty()) doc["tolerances"] = std::move(tol);

  std::ostringstream out;
  pretty(doc, out, 0);
  out << "\n";
  return out.str();
}

DensityMatrix problem_state(const ProblemFile& problem, const std::string& name, double tol) {
  const auto it = problem.states.find(name);
  if (it == problem.states.end()) throw InvalidArgument("no state named \"" + name + "\"");
  std::vector<Hamiltonian> factors;
  for (const auto& f : it->second.factors) factors.push_back(problem.hamiltonian(f));
  return validate_state(it->second.matrix, std::move(factors), tol);
}

Channel problem_channel(const ProblemFile& problem, const std::string& name, double tol) {
  const auto it = problem.channels.find(name);
  if (it == problem.channels.end()) throw InvalidArgument("no channel named \"" + name + "\"");
  return Channel::from_choi(it->second.choi, problem.hamiltonian(it->second.input),
                            problem.hamiltonian(it->second.output), tol);
}

ProblemFile example_problem(std::uint64_t seed) {
  RandomSource rng(seed);
  const auto d = static_cast<std::size_t>(rng.integer(2, 3));
  std::vector<Rational> energies{Rational(0)};
  for (std::size_t k = 1; k < d; ++k) {
    Rational e(static_cast<long>(rng.integer(1, 6)), static_cast<unsigned long>(rng.integer(1, 4)));
    e.canonicalize();
    energies.push_back(energies.back() + e);
  }
  const Hamiltonian h(energies);

  ProblemFile p;
  p.hamiltonians.emplace(kSystemHamiltonian, h);
  p.hamiltonians.emplace("pair", tensor_hamiltonian(h, h));

  const DensityMatrix rho = rng.state(h, rng.integer(1, static_cast<std::int64_t>(d)));
  const Channel lambda = random_covariant_channel(h, seed ^ 0x9e3779b97f4a7c15ULL);
  const std::vector<std::string> one{kSystemHamiltonian};
  p.states["rho"] = {rho.matrix(), one};
  p.states["sigma"] = {apply(lambda, rho).matrix(), one};
  p.states["incoherent"] = {rng.incoherent_state(h).matrix(), one};
  p.states["plus"] = {plus_state(0, 1, h).matrix(), one};
  p.states["plus2"] = {tensor_power(plus_state(0, 1, h), 2).matrix(), {kSystemHamiltonian, kSystemHamiltonian}};
  p.states["rho2"] = {tensor_power(rho, 2).matrix(), {"pair"}};

  p.channels["lambda"] = {lambda.choi(), kSystemHamiltonian, kSystemHamiltonian};
  p.channels["dephase"] = {full_dephasing(h).choi(), kSystemHamiltonian, kSystemHamiltonian};

  p.pairs = {{"rho", "sigma"}, {"incoherent", "plus"}, {"plus", "incoherent"}, {"rho", "rho"}};
  p.beta = rng.uniform(0.1, 2.0);
  p.tolerances.coherence = 1e-9;
  p.tolerances.feasibility = 1e-7;
  return p;
}

}  // namespace qasym
