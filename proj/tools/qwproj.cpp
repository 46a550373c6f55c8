// Copyright 2026 The qwproj Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// qwproj: run, verify and reconstruct projected quantum walks.
//
// Exit codes: 0 success, 2 configuration error, 3 null projection,
// 4 verification failure.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "qwproj/catalog.hpp"
#include "qwproj/error.hpp"
#include "qwproj/io.hpp"
#include "qwproj/kernels.hpp"
#include "qwproj/projection.hpp"
#include "qwproj/reconstruction.hpp"
#include "qwproj/walk.hpp"

namespace {

using namespace qwproj;

constexpr int kExitConfig = 2;
constexpr int kExitNullProjection = 3;
constexpr int kExitVerification = 4;

enum class LogLevel { kOff, kInfo, kDebug };

LogLevel log_level() {
  static const LogLevel level = [] {
    const char* env = std::getenv("QWPROJ_LOG");
    const std::string v = env ? env : "off";
    if (v == "debug") return LogLevel::kDebug;
    if (v == "info") return LogLevel::kInfo;
    return LogLevel::kOff;
  }();
  return level;
}

void log(LogLevel level, const std::string& msg) {
  if (level <= log_level() && log_level() != LogLevel::kOff) {
    std::cerr << (level == LogLevel::kDebug ? "[debug] " : "[info] ") << msg << '\n';
  }
}

struct Options {
  std::string scenario;
  std::string config;
  std::int64_t steps = 10;
  std::int64_t k = 2;
  std::int64_t l = 1;
  std::int64_t n_circle = 4;
  std::string phi = "0";
  std::optional<std::int64_t> phi_samples;
  std::string init;
  std::string state = "default";
  std::string out_state;
  std::string out_dist;
  std::string out_report;
  std::optional<double> tol;
  bool projected = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kInvalidParameter, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << content)) throw Error(ErrorCode::kInvalidParameter, "cannot write " + path);
  log(LogLevel::kInfo, "wrote " + path);
}

io::Json parse_json(const std::string& text) {
  try {
    return io::Json::parse(text);
  } catch (const io::Json::exception& e) {
    throw Error(ErrorCode::kInvalidFormat, e.what());
  }
}

ScenarioDescriptor load_scenario(const Options& opt) {
  if (opt.steps < 0) throw Error(ErrorCode::kInvalidParameter, "--steps must be >= 0");
  if (opt.tol && !(*opt.tol > 0.0)) throw Error(ErrorCode::kInvalidParameter, "--tol must be > 0");
  if (!opt.config.empty()) return io::scenario_from_config(parse_json(read_file(opt.config)));
  if (opt.scenario.empty()) {
    throw Error(ErrorCode::kInvalidParameter, "one of --scenario or --config is required");
  }
  ScenarioParams params;
  params.k = opt.k;
  params.n_circle = opt.n_circle;
  params.phi = io::parse_angle(opt.phi);
  return scenario(opt.scenario, params);
}

WalkState initial_state(const Options& opt, const ScenarioDescriptor& d) {
  if (!opt.init.empty()) {
    const std::string text = opt.init.front() == '{' ? opt.init : read_file(opt.init);
    return io::state_from_json(parse_json(text), d.walk.space());
  }
  const auto it = d.states.find(opt.state);
  if (it == d.states.end()) {
    throw Error(ErrorCode::kInvalidParameter,
                "scenario " + d.name + " has no state \"" + opt.state + "\"");
  }
  return it->second;
}

const ProjectionMap& require_pmap(const ScenarioDescriptor& d) {
  if (!d.pmap) throw Error(ErrorCode::kInvalidParameter, "scenario has no projection");
  return *d.pmap;
}

std::string dump(const io::Json& json) { return json.dump(2) + "\n"; }

int cmd_run(const Options& opt) {
  const ScenarioDescriptor d = load_scenario(opt);
  const WalkState psi0 = initial_state(opt, d);
  WalkState out = [&] {
    if (!opt.projected) return evolve(d.walk, psi0, opt.steps);
    const ProjectionMap& pmap = require_pmap(d);
    std::vector<PositionKey> window;
    if (!d.walk.coin().is_homogeneous()) {
      window = default_homogeneity_window(d.walk, pmap, psi0, opt.steps);
    }
    const WalkSpec induced = induced_walk(d.walk, pmap, d.phi, window);
    return evolve(induced, project_state(pmap, d.phi, psi0), opt.steps);
  }();
  log(LogLevel::kInfo, "evolved " + std::to_string(opt.steps) + " steps on " +
                           out.space()->name() + ", support " +
                           std::to_string(out.support_size()));
  if (!opt.out_state.empty()) write_file(opt.out_state, dump(io::state_to_json(out)));
  if (!opt.out_dist.empty()) write_file(opt.out_dist, io::distribution_csv(out));
  if (opt.out_state.empty() && opt.out_dist.empty()) std::cout << io::distribution_csv(out);
  return 0;
}

int cmd_verify(const Options& opt) {
  const ScenarioDescriptor d = load_scenario(opt);
  const ProjectionMap& pmap = require_pmap(d);
  const WalkState psi0 = initial_state(opt, d);
  const CommutationReport report =
      verify_commutation(d.walk, pmap, d.phi, psi0, opt.steps, opt.tol.value_or(1e-10));
  log(LogLevel::kInfo, "max residual " + io::format_double(report.max_residual));
  const std::string text = dump(io::commutation_report_json(report));
  if (opt.out_report.empty()) {
    std::cout << text;
  } else {
    write_file(opt.out_report, text);
  }
  return report.passed ? 0 : kExitVerification;
}

int cmd_reconstruct(const Options& opt) {
  const ScenarioDescriptor d = load_scenario(opt);
  const ProjectionMap pmap = d.walk.space()->name() == "z2" ? lattice_quotient(opt.k, opt.l)
                                                            : require_pmap(d);
  if (!pmap.can_unproject()) {
    throw Error(ErrorCode::kInvalidParameter, pmap.name() + " cannot be inverted");
  }
  const WalkState psi0 = initial_state(opt, d);
  const SigmaBounds bounds = reachable_sigma_bounds(pmap, psi0, opt.steps);
  const ReconstructionPlan plan(pmap, bounds, opt.phi_samples);
  log(LogLevel::kInfo, "sigma in [" + std::to_string(bounds.min) + ", " +
                           std::to_string(bounds.max) + "], " + std::to_string(plan.samples()) +
                           " phases");
  const PhaseFamily family = evolve_projection_family(d.walk, plan, psi0, opt.steps);
  const WalkState recovered = reconstruct(family, pmap, bounds);
  const WalkState reference = evolve(d.walk, psi0, opt.steps);
  const double error = max_abs_diff(recovered, reference);
  log(LogLevel::kInfo, "max error " + io::format_double(error));

  const std::string report = dump(io::reconstruction_report_json(
      {.samples = plan.samples(), .bounds = bounds, .max_error = error}, recovered));
  if (!opt.out_report.empty()) write_file(opt.out_report, report);
  if (!opt.out_state.empty()) write_file(opt.out_state, dump(io::state_to_json(recovered)));
  if (!opt.out_dist.empty()) write_file(opt.out_dist, io::distribution_csv(recovered));
  if (opt.out_report.empty() && opt.out_state.empty() && opt.out_dist.empty()) {
    std::cout << "max_error " << io::format_double(error) << '\n';
  }
  return error < opt.tol.value_or(1e-10) ? 0 : kExitVerification;
}

void add_common(CLI::App& cmd, Options& opt) {
  cmd.add_option("--scenario", opt.scenario, "catalog scenario name");
  cmd.add_option("--config", opt.config, "JSON scenario config file");
  cmd.add_option("--steps", opt.steps, "number of walk steps");
  cmd.add_option("--k", opt.k, "lattice projection coefficient k");
  cmd.add_option("--l", opt.l, "lattice projection coefficient l");
  cmd.add_option("--n-circle", opt.n_circle, "circle size N");
  cmd.add_option("--phi", opt.phi, "phase in radians, e.g. 0.5 or pi/3");
  cmd.add_option("--phi-samples", opt.phi_samples, "phase grid size M");
  cmd.add_option("--init", opt.init, "initial state: JSON file or inline JSON");
  cmd.add_option("--state", opt.state, "named scenario state (default, trapped+, trapped-)");
  cmd.add_option("--out-state", opt.out_state, "write the final state as JSON");
  cmd.add_option("--out-dist", opt.out_dist, "write the position distribution as CSV");
  cmd.add_option("--out-report", opt.out_report, "write the JSON report");
  cmd.add_option("--tol", opt.tol, "pass threshold");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Projected coined quantum walks"};
  app.require_subcommand(1);
  Options opt;
  CLI::App* run = app.add_subcommand("run", "evolve a scenario and export the final state");
  CLI::App* verify = app.add_subcommand("verify", "check that projection commutes with evolution");
  CLI::App* rec = app.add_subcommand("reconstruct", "recover a walk from phase projections");
  for (CLI::App* cmd : {run, verify, rec}) add_common(*cmd, opt);
  run->add_flag("--projected", opt.projected, "evolve the induced walk instead");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  log(LogLevel::kDebug, std::string("kernels: ") + std::string(kernels::to_string(kernels::active_isa())));
  try {
    if (*run) return cmd_run(opt);
    if (*verify) return cmd_verify(opt);
    return cmd_reconstruct(opt);
  } catch (const Error& e) {
    std::cerr << "qwproj: " << e.what() << '\n';
    return e.code() == ErrorCode::kNullProjection ? kExitNullProjection : kExitConfig;
  }
}
