// Copyright 2026 The qindel Authors
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

// qindel: deletion spheres, indel distances and code verdicts from the
// command line.
//
// Exit codes: 0 success / true, 1 false, 2 inconclusive, 3 usage or input error.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qindel/codes.hpp"
#include "qindel/distance.hpp"
#include "qindel/error.hpp"
#include "qindel/io.hpp"
#include "qindel/reproduce.hpp"

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace qindel;

enum Exit : int { kTrue = 0, kFalse = 1, kInconclusive = 2, kUsage = 3 };

struct Globals {
  std::optional<double> eq_tol;
  std::optional<double> psd_tol;
  double feas_tol = 1e-6;
  double gap_tol = 1e-3;
  int max_iterations = FeasibilityOptions{}.max_iterations;
  std::string report_path;
  bool json_stdout = false;
  bool deterministic = false;
  std::string command;

  ToleranceSettings tol() const { return {eq_tol, psd_tol, std::nullopt}; }
  FeasibilityOptions feas() const {
    FeasibilityOptions f;
    f.feas_tol = feas_tol;
    f.gap_tol = gap_tol;
    f.max_iterations = max_iterations;
    f.tol = tol();
    return f;
  }
  json tolerances() const {
    auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
    return {{"eq_tol", opt(eq_tol)},
            {"psd_tol", opt(psd_tol)},
            {"feas_tol", feas_tol},
            {"gap_tol", gap_tol},
            {"max_iterations", max_iterations}};
  }
};

[[noreturn]] void usage_error(const std::string& what) { throw Error(ErrorCode::InvalidArgument, what); }

// FNV-1a, 64 bit.
class Digest {
 public:
  void add(std::string_view bytes) {
    for (unsigned char c : bytes) {
      h_ ^= c;
      h_ *= 0x100000001b3ULL;
    }
  }
  std::string hex() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h_));
    return std::string("fnv1a64:") + buf;
  }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, sep)) out.push_back(part);
  return out;
}

double parse_number(const std::string& s) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    usage_error("not a number: \"" + s + "\"");
  }
  if (used != s.size()) usage_error("not a number: \"" + s + "\"");
  return v;
}

// Accepts plain numbers and multiples of pi such as "pi/8", "3pi/4", "0.5pi".
double parse_angle(const std::string& s) {
  const auto at = s.find("pi");
  if (at == std::string::npos) return parse_number(s);
  const std::string coef = s.substr(0, at);
  const std::string rest = s.substr(at + 2);
  double v = (coef.empty() ? 1.0 : coef == "-" ? -1.0 : parse_number(coef)) * std::numbers::pi;
  if (!rest.empty()) {
    if (rest[0] != '/') usage_error("bad angle: \"" + s + "\"");
    v /= parse_number(rest.substr(1));
  }
  return v;
}

codes::CodewordParam parse_param(const std::string& args) {
  if (args.empty()) return {1.0, 0.0};
  const auto parts = split(args, ',');
  if (parts.size() != 2) usage_error("expected THETA,PHI, got \"" + args + "\"");
  return codes::CodewordParam::polar(parse_angle(parts[0]), parse_angle(parts[1]));
}

// NAME[:ARGS] without the "builtin:" prefix.
DensityMatrix builtin_state(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (name == "rho" || name == "psi") {
    const double p0 = args.empty() ? 0.5 : parse_number(args);
    if (!(p0 >= 0.0 && p0 <= 1.0)) usage_error("p0 must lie in [0, 1]");
    return name == "rho" ? codes::rho(p0, 1.0 - p0) : codes::psi(p0, 1.0 - p0);
  }
  if (name == "x1") return codes::x1_codeword(parse_param(args));
  if (name == "hagiwara4") return codes::hagiwara_codeword(parse_param(args));
  if (name == "collision-x2") {
    const auto [a, b] = codes::collision_pair_x2(codes::engineered_param());
    if (args.empty() || args == "1") return a;
    if (args == "2") return b;
    usage_error("builtin:collision-x2 takes :1 or :2");
  }
  usage_error("unknown builtin \"" + name + "\"");
}

constexpr std::string_view kBuiltin = "builtin:";

struct Inputs {
  Digest digest;

  DensityMatrix state(const std::string& spec, const ToleranceSettings& tol) {
    DensityMatrix rho = spec.starts_with(kBuiltin) ? builtin_state(spec.substr(kBuiltin.size()))
                                                   : io::load_state(spec, tol);
    // File names rather than paths, so the digest does not depend on where
    // the inputs live.
    record(spec.starts_with(kBuiltin) ? spec : fs::path(spec).filename().string(), rho);
    return rho;
  }

  void record(const std::string& label, const DensityMatrix& rho) {
    digest.add(label);
    digest.add("\n");
    digest.add(io::to_json(rho).dump());
    digest.add("\n");
  }
};

codes::GridOptions parse_grid(const std::string& g) {
  codes::GridOptions opts;
  if (g.empty()) return opts;
  const auto parts = split(g, ',');
  if (parts.size() != 2) usage_error("--grid expects THETA_STEPS,PHI_STEPS");
  opts.theta_steps = static_cast<int>(parse_number(parts[0]));
  opts.phi_steps = static_cast<int>(parse_number(parts[1]));
  if (opts.theta_steps < 1 || opts.phi_steps < 1) usage_error("--grid steps must be positive");
  return opts;
}

CodeSample code_from_spec(const std::string& spec, const std::string& grid, Inputs& in,
                          const ToleranceSettings& tol) {
  std::vector<DensityMatrix> states;
  std::vector<std::string> labels;
  bool dedup = false;
  if (spec.starts_with(kBuiltin)) {
    const std::string name = spec.substr(kBuiltin.size());
    if (name == "x1" || name == "hagiwara4") {
      const auto g = name == "x1" ? codes::x1_grid(parse_grid(grid)) : codes::x2_grid(parse_grid(grid));
      for (const auto& p : g.params)
        states.push_back(name == "x1" ? codes::x1_codeword(p) : codes::hagiwara_codeword(p));
      labels = g.labels;
      dedup = true;
    } else if (name == "collision-x2") {
      const auto [a, b] = codes::collision_pair_x2(codes::engineered_param());
      states = {a, b};
      labels = {"x2(engineered)", "x2(engineered partner)"};
    } else if (name.size() >= 2 && name.front() == '{' && name.back() == '}') {
      // Items are comma separated, or semicolon separated when they carry
      // THETA,PHI arguments themselves.
      const std::string inner = name.substr(1, name.size() - 2);
      for (const auto& item : split(inner, inner.find(';') != std::string::npos ? ';' : ',')) {
        states.push_back(builtin_state(item));
        labels.push_back(item);
      }
    } else {
      usage_error("\"" + spec + "\" is not a code; use x1, hagiwara4, collision-x2 or {a,b,...}");
    }
  } else if (fs::is_directory(spec)) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(spec))
      if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      states.push_back(io::load_state(f, tol));
      labels.push_back(f.filename().string());
    }
  } else {
    usage_error("code spec must be a builtin or a directory of state files: \"" + spec + "\"");
  }
  for (std::size_t k = 0; k < states.size(); ++k) in.record(labels[k], states[k]);
  return dedup ? CodeSample::deduplicated(states, labels, tol) : CodeSample::make(states, labels, tol);
}

class Timer {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void write_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) usage_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

// Emits the run report; the human summary goes to stdout unless --json.
void emit(const Globals& g, const Inputs& in, const json& results, const Timer& timer,
          const std::string& summary) {
  const json report{{"command", g.command},
                    {"inputs_digest", in.digest.hex()},
                    {"results", results},
                    {"tolerances", g.tolerances()},
                    {"elapsed_ms", g.deterministic ? 0.0 : timer.ms()}};
  if (!g.report_path.empty()) write_file(g.report_path, report);
  if (g.json_stdout)
    std::cout << report.dump(2) << '\n';
  else
    std::cout << summary;
}

int cmd_sphere(const Globals& g, const std::string& state, int s, const std::string& out_path) {
  const Timer timer;
  Inputs in;
  const auto rho = in.state(state, g.tol());
  const auto sphere = deletion_sphere(rho, s, g.tol());
  const json members = io::to_json(sphere);
  if (!out_path.empty()) write_file(out_path, members);
  std::ostringstream os;
  os << "cardinality " << sphere.size() << " (" << sphere.raw_count << " index sets before deduplication)\n";
  for (const auto& m : sphere.members)
    os << "  D_" << m.origin.to_string() << "  multiplicity " << m.multiplicity << '\n';
  emit(g, in, {{"s", s}, {"cardinality", sphere.size()}, {"raw_count", sphere.raw_count}, {"sphere", members}},
       timer, os.str());
  return kTrue;
}

int cmd_distance(const Globals& g, const std::string& a, const std::string& b) {
  const Timer timer;
  Inputs in;
  const auto ra = in.state(a, g.tol());
  const auto rb = in.state(b, g.tol());
  const auto d = indel_distance(ra, rb, g.tol());
  std::ostringstream os;
  os << "distance " << d.value << '\n'
     << "witness D_" << d.witness.p.to_string() << "(A) = D_" << d.witness.q.to_string() << "(B)  (s=" << d.witness.s
     << ", t=" << d.witness.t << ")\n";
  emit(g, in, io::to_json(d), timer, os.str());
  return kTrue;
}

int cmd_verify(const Globals& g, const std::string& spec, int t, const std::string& errors,
               const std::string& grid, std::uint64_t seed) {
  const Timer timer;
  Inputs in;
  const auto model = parse_error_model(errors);
  const auto code = code_from_spec(spec, grid, in, g.tol());
  const auto v = model == ErrorModel::Insertions ? corrects_insertions(code, t, g.feas())
                                                 : corrects(code, model, t, g.tol());
  json results = io::to_json(v, code);
  results["seed"] = seed;
  std::ostringstream os;
  os << "verdict " << to_string(v.verdict) << "  (" << to_string(v.model) << ", t=" << t << ", "
     << code.size() << " codewords)\n"
     << "criterion " << v.criterion << '\n';
  if (v.min_distance) os << "min_distance " << *v.min_distance << '\n';
  if (v.evidence) {
    os << "evidence " << code.labels()[v.evidence->i] << " vs " << code.labels()[v.evidence->j];
    if (v.evidence->distance) os << "  distance " << v.evidence->distance->value;
    if (v.evidence->feasibility)
      os << "  " << to_string(v.evidence->feasibility->status) << " gap " << v.evidence->feasibility->gap;
    os << '\n';
  }
  emit(g, in, results, timer, os.str());
  switch (v.verdict) {
    case Verdict::True: return kTrue;
    case Verdict::False: return kFalse;
    case Verdict::Unknown: return kInconclusive;
  }
  return kInconclusive;
}

int cmd_paper_examples(const Globals& g, std::uint64_t seed) {
  const Timer timer;
  reproduce::Options opts;
  opts.seed = seed;
  opts.tol = g.tol();
  opts.feas = g.feas();
  const auto items = reproduce::run_all(opts);
  bool all = true;
  for (std::size_t k = 0; k < items.size(); ++k) {
    all = all && items[k].passed;
    if (!g.json_stdout)
      std::printf("%s %zu %-28s residual=%.3e\n", items[k].passed ? "PASS" : "FAIL", k + 1, items[k].name.c_str(),
                  items[k].residual);
  }
  const json report = reproduce::report(items, opts, g.deterministic ? 0.0 : timer.ms());
  if (!g.report_path.empty()) write_file(g.report_path, report);
  if (g.json_stdout) std::cout << report.dump(2) << '\n';
  return all ? kTrue : kFalse;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deletion spheres, indel distances and code verdicts for qudit density matrices"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--eq-tol", g.eq_tol, "Absolute equality tolerance (default 1e-9 sqrt(dim))");
  app.add_option("--psd-tol", g.psd_tol, "Absolute PSD tolerance (default 1e-9 dim)");
  app.add_option("--feas-tol", g.feas_tol, "Constraint residual accepted as feasible")->capture_default_str();
  app.add_option("--gap-tol", g.gap_tol, "Gap reported as infeasible")->capture_default_str();
  app.add_option("--max-iterations", g.max_iterations, "Iteration budget of the feasibility solver per (P, Q) pair")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--report", g.report_path, "Write the JSON run report to this file");
  app.add_flag("--json", g.json_stdout, "Print the JSON run report instead of the summary");
  app.add_flag("--deterministic", g.deterministic, "Report elapsed_ms as 0 so reports are byte-stable");

  std::string state_a, state_b, out_path, code_spec, errors = "deletions", grid;
  int s = 1, t = 1;
  std::uint64_t seed = reproduce::Options{}.seed;

  auto* sphere = app.add_subcommand("sphere", "Deduplicated deletion sphere D^s of a state");
  sphere->add_option("state", state_a, "State file or builtin:NAME")->required();
  sphere->add_option("--s", s, "Number of deletions")->required();
  sphere->add_option("--out", out_path, "Write the sphere as a JSON list of states");

  auto* distance = app.add_subcommand("distance", "Quantum indel distance between two states");
  distance->add_option("a", state_a, "State file or builtin:NAME")->required();
  distance->add_option("b", state_b, "State file or builtin:NAME")->required();

  auto* verify = app.add_subcommand("verify", "Decide whether a code corrects t errors");
  verify->add_option("code", code_spec, "builtin:x1, builtin:hagiwara4, builtin:collision-x2, builtin:{a,b,...} or a directory")
      ->required();
  verify->add_option("--t", t, "Number of errors")->capture_default_str();
  verify->add_option("--errors", errors, "deletions | indel | insertions")->capture_default_str();
  verify->add_option("--grid", grid, "THETA_STEPS,PHI_STEPS for grid codes (default 4,8)");
  verify->add_option("--seed", seed, "Recorded in the report")->capture_default_str();

  auto* examples = app.add_subcommand("paper-examples", "Run the reproduction suite");
  examples->add_option("--seed", seed, "Seed for sampled states and trajectories")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  g.command = "qindel";
  for (int k = 1; k < argc; ++k) g.command += std::string(" ") + argv[k];

  try {
    if (*sphere) return cmd_sphere(g, state_a, s, out_path);
    if (*distance) return cmd_distance(g, state_a, state_b);
    if (*verify) return cmd_verify(g, code_spec, t, errors, grid, seed);
    if (*examples) return cmd_paper_examples(g, seed);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::NoConvergence ? kInconclusive : kUsage;
  }
  return kUsage;
}
