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

#include "qasym/cli.hpp"

#include <atomic>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "qasym/catalysis.hpp"
#include "qasym/coherence.hpp"
#include "qasym/feasibility.hpp"
#include "qasym/monotones.hpp"
#include "qasym/problem_file.hpp"
#include "qasym/protocol.hpp"

namespace qasym {

namespace {

using Json = nlohmann::ordered_json;

constexpr double kDefaultBeta = 1.0;

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream s;
  s << std::setprecision(12) << v;
  return s.str();
}

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(fmt(v)); }

struct Settings {
  std::string file;
  double tol = kDefaultCoherenceTolerance;
  bool tol_given = false;
  std::string beta_text;
  bool structured = false;
  bool lenient = false;
  std::uint64_t seed = 0;
  int jobs = 1;
};

double parse_beta(const std::string& text) {
  if (text == "inf") return kInfiniteBeta;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !(v >= 0.0)) throw InvalidArgument("beta must be a number >= 0 or \"inf\"");
  return v;
}

// Collects a report once and renders it either as text lines or as JSON.
class Report {
 public:
  explicit Report(std::string command) { doc_["command"] = std::move(command); }

  Json& doc() { return doc_; }
  void line(const std::string& label, const std::string& value) { lines_.emplace_back(label, value); }

  int emit(std::ostream& out, bool structured, int code) {
    if (structured) {
      doc_["exit_code"] = code;
      out << doc_.dump(2) << "\n";
    } else {
      for (const auto& [label, value] : lines_) out << label << ": " << value << "\n";
    }
    return code;
  }

 private:
  Json doc_;
  std::vector<std::pair<std::string, std::string>> lines_;
};

class Session {
 public:
  explicit Session(const Settings& s) : s_(s) {}

  const ProblemFile& problem() {
    if (!problem_) {
      problem_ = load_problem(s_.file, s_.lenient ? ParseMode::kLenient : ParseMode::kStrict);
    }
    return *problem_;
  }

  double coherence_tol() {
    if (s_.tol_given) return s_.tol;
    return problem().tolerances.coherence.value_or(kDefaultCoherenceTolerance);
  }
  double validation_tol() {
    if (s_.tol_given) return s_.tol;
    return problem().tolerances.validation.value_or(kDefaultStateTolerance);
  }
  double beta() {
    if (!s_.beta_text.empty()) return parse_beta(s_.beta_text);
    return problem().beta.value_or(kDefaultBeta);
  }
  DensityMatrix state(const std::string& name) { return problem_state(problem(), name, validation_tol()); }

 private:
  const Settings& s_;
  std::optional<ProblemFile> problem_;
};

std::string join(const std::vector<std::string>& items, const char* sep = " ") {
  std::string out;
  for (std::size_t k = 0; k < items.size(); ++k) out += (k ? sep : "") + items[k];
  return out;
}

int cmd_coherences(Session& session, const Settings& s, const std::string& name, std::ostream& out) {
  const double tol = session.coherence_tol();
  const auto set = available_coherences(session.state(name), tol);
  const Lattice lattice = reachable_lattice(set);
  std::vector<std::string> deltas;
  for (const auto& d : set.deltas) deltas.push_back(to_string(d));

  Report r("coherences");
  r.doc()["state"] = name;
  r.doc()["deltas"] = deltas;
  r.doc()["generator"] = to_string(lattice.generator());
  r.doc()["tolerance"] = tol;
  r.line("state", name);
  r.line("coherences", join(deltas));
  r.line("lattice generator", to_string(lattice.generator()));
  r.line("tolerance", fmt(tol));
  return r.emit(out, s.structured, kExitPositive);
}

int verdict_exit(CatalysisStatus status) {
  switch (status) {
    case CatalysisStatus::kConvertible: return kExitPositive;
    case CatalysisStatus::kForbidden: return kExitNegative;
    case CatalysisStatus::kUnknown: return kExitUndetermined;
  }
  return kExitError;
}

int cmd_verdict(Session& session, const Settings& s, const std::string& rho_name,
                const std::string& sigma_name, std::ostream& out) {
  const auto rho = session.state(rho_name);
  const auto sigma = session.state(sigma_name);
  const double tol = session.coherence_tol();
  const double beta = session.beta();
  const auto verdict = verdict_theorem1(rho, sigma, tol);
  const auto conj = evaluate_conjecture(rho, sigma, beta, tol);
  const double qfi_rho = qfi(rho);
  const double qfi_sigma = qfi(sigma);
  const auto g_rho = reachable_lattice(available_coherences(rho, tol)).generator();
  const auto g_sigma = reachable_lattice(available_coherences(sigma, tol)).generator();

  Report r("verdict");
  r.doc()["rho"] = rho_name;
  r.doc()["sigma"] = sigma_name;
  r.doc()["status"] = to_string(verdict.status);
  r.doc()["reason"] = to_string(verdict.reason);
  r.doc()["conjecture"] = Json{{"conjectural", true},
                               {"holds", conj.holds},
                               {"free_energy_condition", conj.free_energy_condition},
                               {"lattice_condition", conj.lattice_condition}};
  r.doc()["monotones"] = Json{{"qfi_rho", qfi_rho},
                              {"qfi_sigma", qfi_sigma},
                              {"relative_entropy_rho", number(conj.free_energy_rho)},
                              {"relative_entropy_sigma", number(conj.free_energy_sigma)}};
  r.doc()["generators"] = Json{{"rho", to_string(g_rho)}, {"sigma", to_string(g_sigma)}};
  r.doc()["beta"] = number(beta);
  r.doc()["tolerance"] = tol;

  const auto yes = [](bool b) { return b ? "true" : "false"; };
  r.line("verdict", std::string(to_string(verdict.status)) + " (" + to_string(verdict.reason) + ")");
  r.line("conjecture [CONJECTURAL]", std::string(yes(conj.holds)) + " (free energy " +
                                         yes(conj.free_energy_condition) + ", lattice " +
                                         yes(conj.lattice_condition) + ")");
  r.line("qfi", "rho " + fmt(qfi_rho) + ", sigma " + fmt(qfi_sigma));
  r.line("relative entropy to Gibbs", "rho " + fmt(conj.free_energy_rho) + ", sigma " + fmt(conj.free_energy_sigma));
  r.line("lattice generators", "rho " + to_string(g_rho) + ", sigma " + to_string(g_sigma));
  r.line("beta", fmt(beta));
  return r.emit(out, s.structured, verdict_exit(verdict.status));
}

int cmd_check_channel(Session& session, const Settings& s, const std::string& name, std::ostream& out) {
  const double tol = session.validation_tol();
  const double beta = session.beta();
  const Channel ch = problem_channel(session.problem(), name, tol);
  const double cov = covariance_violation(ch);
  const double gibbs = gibbs_violation(ch, beta);
  const bool covariant = cov <= tol;
  const bool preserving = gibbs < tol;
  const int code = covariant && preserving ? kExitPositive : kExitNegative;

  Report r("check-channel");
  r.doc()["channel"] = name;
  r.doc()["covariant"] = covariant;
  r.doc()["covariance_violation"] = cov;
  r.doc()["gibbs_preserving"] = preserving;
  r.doc()["gibbs_violation"] = gibbs;
  r.doc()["beta"] = number(beta);
  r.doc()["tolerance"] = tol;
  r.line("channel", name);
  r.line("covariant", std::string(covariant ? "true" : "false") + " (violation " + fmt(cov) + ")");
  r.line("gibbs preserving", std::string(preserving ? "true" : "false") + " (violation " + fmt(gibbs) + ")");
  r.line("beta", fmt(beta));
  r.line("tolerance", fmt(tol));
  return r.emit(out, s.structured, code);
}

int feasibility_exit(FeasibilityStatus status) {
  switch (status) {
    case FeasibilityStatus::kFeasible: return kExitPositive;
    case FeasibilityStatus::kInfeasible: return kExitNegative;
    case FeasibilityStatus::kUndetermined: return kExitUndetermined;
  }
  return kExitError;
}

struct FeasibilityJob {
  std::string rho;
  std::string sigma;
  std::optional<FeasibilityVerdict> verdict;
  std::string error;
};

Json verdict_json(const FeasibilityVerdict& v) {
  return Json{{"status", to_string(v.status)},
              {"certificate", v.certificate ? Json(to_string(*v.certificate)) : Json(nullptr)},
              {"residual", v.residual},
              {"iterations", v.iterations}};
}

std::string verdict_text(const FeasibilityVerdict& v) {
  std::string out = to_string(v.status);
  if (v.certificate) out += std::string(" (") + to_string(*v.certificate) + ")";
  return out;
}

int cmd_feasible(Session& session, const Settings& s, const std::vector<std::string>& names, bool batch,
                 int max_iter, std::ostream& out) {
  FeasibilityOptions options;
  options.max_iter = max_iter;
  options.coherence_tol = session.problem().tolerances.coherence.value_or(kDefaultCoherenceTolerance);
  options.tol = s.tol_given ? s.tol : session.problem().tolerances.feasibility.value_or(FeasibilityOptions{}.tol);
  const double validation = session.problem().tolerances.validation.value_or(kDefaultStateTolerance);
  if (max_iter < 1) throw InvalidArgument("--max-iter must be >= 1");

  std::vector<FeasibilityJob> jobs;
  if (batch) {
    if (!names.empty()) throw InvalidArgument("--batch takes the pairs from the file; do not name states");
    for (const auto& [a, b] : session.problem().pairs) jobs.push_back({a, b, std::nullopt, {}});
    if (jobs.empty()) throw InvalidArgument("the problem file lists no pairs");
  } else {
    if (names.size() != 2) throw InvalidArgument("feasible needs RHO and SIGMA state names (or --batch)");
    jobs.push_back({names[0], names[1], std::nullopt, {}});
  }

  const ProblemFile& problem = session.problem();
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t k = next++; k < jobs.size(); k = next++) {
      try {
        const auto rho = problem_state(problem, jobs[k].rho, validation);
        const auto sigma = problem_state(problem, jobs[k].sigma, validation);
        jobs[k].verdict = covariant_convertible(rho, sigma, options);
      } catch (const ValidationError& e) {
        jobs[k].error = std::string("validation failed (") + to_string(e.failure()) + "): " + e.what();
      } catch (const std::exception& e) {
        jobs[k].error = e.what();
      }
    }
  };
  const int threads = std::max(1, std::min<int>(s.jobs, static_cast<int>(jobs.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  if (!batch) {
    const auto& job = jobs.front();
    if (!job.error.empty()) throw Error(job.error);
    const auto& v = *job.verdict;
    Report r("feasible");
    r.doc()["rho"] = job.rho;
    r.doc()["sigma"] = job.sigma;
    const Json fields = verdict_json(v);
    for (const auto& [key, value] : fields.items()) r.doc()[key] = value;
    r.doc()["tolerance"] = options.tol;
    r.doc()["max_iter"] = options.max_iter;
    r.line("status", to_string(v.status));
    r.line("certificate", v.certificate ? to_string(*v.certificate) : "none");
    r.line("residual", fmt(v.residual));
    r.line("iterations", std::to_string(v.iterations));
    return r.emit(out, s.structured, feasibility_exit(v.status));
  }

  // Batch outcome: any error, then any undetermined, then any infeasible.
  bool error = false, undetermined = false, infeasible = false;
  Report r("feasible");
  Json results = Json::array();
  for (const auto& job : jobs) {
    Json entry{{"rho", job.rho}, {"sigma", job.sigma}};
    std::string text;
    if (!job.error.empty()) {
      error = true;
      entry["error"] = job.error;
      text = "error: " + job.error;
    } else {
      const auto& v = *job.verdict;
      undetermined |= v.status == FeasibilityStatus::kUndetermined;
      infeasible |= v.status == FeasibilityStatus::kInfeasible;
      const Json fields = verdict_json(v);
      for (const auto& [key, value] : fields.items()) entry[key] = value;
      text = verdict_text(v) + ", residual " + fmt(v.residual) + ", iterations " + std::to_string(v.iterations);
    }
    results.push_back(std::move(entry));
    r.line(job.rho + " -> " + job.sigma, text);
  }
  const char* overall = error ? "error" : undetermined ? "undetermined" : infeasible ? "infeasible" : "feasible";
  const int code = error ? kExitError : undetermined ? kExitUndetermined : infeasible ? kExitNegative : kExitPositive;
  r.doc()["results"] = std::move(results);
  r.doc()["status"] = overall;
  r.doc()["tolerance"] = options.tol;
  r.doc()["max_iter"] = options.max_iter;
  r.line("overall", overall);
  return r.emit(out, s.structured, code);
}

struct ComposeArgs {
  double eps1 = 0, delta1 = 0, eps2 = 0, delta2 = 0, target_eps = 0, target_delta = 0;
  std::size_t n1 = 0, m1 = 0, n2 = 0, m2 = 0;
};

ProtocolSpec declared_stage(std::size_t n, std::size_t m, double eps, double delta) {
  const DensityMatrix unit = maximally_mixed(Hamiltonian::trivial());
  if (n == 1 && m == 1 && eps == 0.0 && delta == 0.0) return identity_protocol(unit);
  return make_protocol(ProtocolChannel::declared(Hamiltonian::trivial(), n, Hamiltonian::trivial(), m), eps,
                       delta, unit);
}

int cmd_compose(const Settings& s, const CLI::App& sub, const ComposeArgs& a, std::ostream& out) {
  const bool budget = sub.count("--target-eps") > 0;
  const bool stages = sub.count("--eps1") + sub.count("--n1") + sub.count("--m1") + sub.count("--delta1") +
                          sub.count("--eps2") + sub.count("--m2") + sub.count("--delta2") > 0;
  Report r("compose");
  if (budget) {
    if (stages) throw InvalidArgument("use either the stage flags or --target-eps, not both");
    if (sub.count("--n2") == 0) throw InvalidArgument("--target-eps needs --n2");
    const bool with_delta = sub.count("--target-delta") > 0;
    const BudgetSplit b = budget_for_target(a.target_eps, with_delta ? a.target_delta : 1.0, a.n2);
    r.doc()["mode"] = "budget";
    r.doc()["target_eps"] = a.target_eps;
    r.doc()["n2"] = a.n2;
    r.doc()["eps1"] = b.eps1;
    r.doc()["eps2"] = b.eps2;
    r.doc()["delta1"] = with_delta ? Json(b.delta1) : Json(nullptr);
    r.doc()["delta2"] = with_delta ? Json(b.delta2) : Json(nullptr);
    r.line("eps1", fmt(b.eps1));
    r.line("eps2", fmt(b.eps2));
    if (with_delta) {
      r.line("delta1", fmt(b.delta1));
      r.line("delta2", fmt(b.delta2));
    }
    r.line("composed eps bound", fmt(static_cast<double>(a.n2) * b.eps1 + b.eps2));
    return r.emit(out, s.structured, kExitPositive);
  }
  for (const char* flag : {"--n1", "--m1", "--n2", "--m2"}) {
    if (sub.count(flag) == 0) throw InvalidArgument(std::string("compose needs ") + flag);
  }
  const auto p1 = declared_stage(a.n1, a.m1, a.eps1, a.delta1);
  const auto p2 = declared_stage(a.n2, a.m2, a.eps2, a.delta2);
  const auto p = compose_marginal_protocols(p1, p2);
  const double rate = static_cast<double>(p.m) / static_cast<double>(p.n);
  r.doc()["mode"] = "compose";
  r.doc()["n"] = p.n;
  r.doc()["m"] = p.m;
  r.doc()["eps"] = p.eps;
  r.doc()["delta"] = p.delta;
  r.doc()["rate"] = rate;
  r.line("n", std::to_string(p.n));
  r.line("m", std::to_string(p.m));
  r.line("eps", fmt(p.eps));
  r.line("delta", fmt(p.delta));
  r.line("rate", fmt(rate));
  return r.emit(out, s.structured, kExitPositive);
}

int cmd_obstruction(Session& session, const Settings& s, const std::string& rho_name,
                    const std::string& sigma_name, double m_bound, std::ostream& out) {
  const auto report = bounded_catalyst_obstruction(session.state(rho_name), session.state(sigma_name), m_bound);
  Report r("obstruction");
  r.doc()["rho"] = rho_name;
  r.doc()["sigma"] = sigma_name;
  r.doc()["qfi_rho"] = report.qfi_in;
  r.doc()["qfi_sigma"] = report.qfi_out;
  r.doc()["h_norm"] = report.h_norm;
  r.doc()["m_bound"] = report.m_bound;
  r.doc()["eps_star"] = report.eps_star ? Json(*report.eps_star) : Json(nullptr);
  r.line("qfi", "rho " + fmt(report.qfi_in) + ", sigma " + fmt(report.qfi_out));
  r.line("hamiltonian norm", fmt(report.h_norm));
  r.line("catalyst bound M", fmt(report.m_bound));
  r.line("eps_star", report.eps_star ? fmt(*report.eps_star) : "no obstruction");
  return r.emit(out, s.structured, kExitPositive);
}

int report_error(std::ostream& out, std::ostream& err, bool structured, const std::string& kind,
                 const std::string& message) {
  err << "qasym: " << kind << ": " << message << "\n";
  if (structured) {
    out << Json{{"error", message}, {"kind", kind}, {"exit_code", static_cast<int>(kExitError)}}.dump(2) << "\n";
  }
  return kExitError;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Covariant and catalytic state conversion checks", "qasym"};
  app.require_subcommand(1);
  app.fallthrough();

  Settings s;
  auto* tol_opt = app.add_option("--tol", s.tol, "Coherence and validation threshold (default 1e-9); "
                                                  "solver tolerance for feasible");
  app.add_option("--beta", s.beta_text, "Inverse temperature, a number >= 0 or inf");
  app.add_flag("--structured", s.structured, "Emit a JSON document on standard output");
  app.add_flag("--lenient", s.lenient, "Ignore unknown fields in problem files");
  app.add_option("--seed", s.seed, "Seed for generated problems");
  app.add_option("--jobs", s.jobs, "Worker threads for batch feasibility")->check(CLI::PositiveNumber);

  std::string rho, sigma, state, channel;
  auto* coherences = app.add_subcommand("coherences", "Available coherences and their lattice");
  coherences->add_option("file", s.file)->required();
  coherences->add_option("state", state)->required();

  auto* verdict = app.add_subcommand("verdict", "Catalytic convertibility verdict for a pair of states");
  verdict->add_option("file", s.file)->required();
  verdict->add_option("rho", rho)->required();
  verdict->add_option("sigma", sigma)->required();

  auto* check = app.add_subcommand("check-channel", "Covariance and Gibbs preservation of a channel");
  check->add_option("file", s.file)->required();
  check->add_option("channel", channel)->required();

  std::vector<std::string> feasible_names;
  bool batch = false;
  int max_iter = FeasibilityOptions{}.max_iter;
  auto* feasible = app.add_subcommand("feasible", "Search for a covariant channel between two states");
  feasible->add_option("file", s.file)->required();
  feasible->add_option("states", feasible_names, "RHO SIGMA");
  feasible->add_flag("--batch", batch, "Check every pair listed in the file");
  feasible->add_option("--max-iter", max_iter, "Solver iteration limit");

  ComposeArgs ca;
  auto* compose = app.add_subcommand("compose", "Compose two marginal protocols or split an error budget");
  compose->add_option("--eps1", ca.eps1);
  compose->add_option("--delta1", ca.delta1);
  compose->add_option("--n1", ca.n1);
  compose->add_option("--m1", ca.m1);
  compose->add_option("--eps2", ca.eps2);
  compose->add_option("--delta2", ca.delta2);
  compose->add_option("--n2", ca.n2);
  compose->add_option("--m2", ca.m2);
  compose->add_option("--target-eps", ca.target_eps);
  compose->add_option("--target-delta", ca.target_delta);

  double m_bound = 0.0;
  auto* obstruction = app.add_subcommand("obstruction", "Error floor for catalysts with bounded Hamiltonian");
  obstruction->add_option("file", s.file)->required();
  obstruction->add_option("rho", rho)->required();
  obstruction->add_option("sigma", sigma)->required();
  obstruction->add_option("--m-bound", m_bound, "Bound M on the catalyst Hamiltonian norm")->required();

  auto* example = app.add_subcommand("example", "Print a generated problem file (see --seed)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPositive : kExitError;
  }
  s.tol_given = tol_opt->count() > 0;

  try {
    if (s.tol_given && !(s.tol >= 0.0)) throw InvalidArgument("--tol must be >= 0");
    Session session(s);
    if (*coherences) return cmd_coherences(session, s, state, out);
    if (*verdict) return cmd_verdict(session, s, rho, sigma, out);
    if (*check) return cmd_check_channel(session, s, channel, out);
    if (*feasible) return cmd_feasible(session, s, feasible_names, batch, max_iter, out);
    if (*compose) return cmd_compose(s, *compose, ca, out);
    if (*obstruction) return cmd_obstruction(session, s, rho, sigma, m_bound, out);
    if (*example) {
      out << serialize_problem(example_problem(s.seed));
      return kExitPositive;
    }
  } catch (const ProblemFileError& e) {
    return report_error(out, err, s.structured, "parse error", e.what());
  } catch (const ValidationError& e) {
    return report_error(out, err, s.structured, std::string("validation failed (") + to_string(e.failure()) + ")",
                        e.what());
  } catch (const std::exception& e) {
    return report_error(out, err, s.structured, "error", e.what());
  }
  return kExitError;
}

}  // namespace qasym
