// Copyright 2026 The speedgame Authors
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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "speedgame/best_response.hpp"
#include "speedgame/core.hpp"
#include "speedgame/dynamics.hpp"
#include "speedgame/equilibria.hpp"
#include "speedgame/io.hpp"
#include "speedgame/mechanisms.hpp"
#include "speedgame/yds.hpp"

namespace {

using namespace speedgame;

constexpr int kExitParse = 2;
constexpr int kExitInvalid = 3;
constexpr int kExitNumeric = 4;
constexpr int kExitIo = 5;

struct CommonFlags {
  std::string instance_path;
  std::string profile_path;
  std::string out_dir = ".";
  std::optional<double> alpha;
  std::optional<double> epsilon;
  std::optional<std::string> mode;
  std::string mechanism = "proportional";
  int max_steps = 1000;
  std::string order = "round_robin";
  std::string grid = "100x100";
  int player = 0;
  int threads = 0;
};

Instance load_instance(const CommonFlags& flags) {
  std::ifstream in(flags.instance_path);
  if (!in) throw ParseError("cannot open " + flags.instance_path, 0);
  Instance instance = parse_instance(in);
  // Precedence: flags > instance header > defaults.
  if (flags.alpha) instance.config.alpha = *flags.alpha;
  if (flags.epsilon) instance.config.epsilon = *flags.epsilon;
  if (flags.mode) {
    if (*flags.mode == "absolute") {
      instance.config.mode = WaitingCostMode::absolute;
    } else if (*flags.mode == "relative") {
      instance.config.mode = WaitingCostMode::relative;
    } else {
      throw std::invalid_argument("mode must be absolute or relative");
    }
  }
  validate_config(instance.config);
  for (const std::string& warning : config_warnings(instance.config))
    std::cerr << "warning: " << warning << "\n";
  return instance;
}

StrategyProfile load_profile(const CommonFlags& flags, int num_jobs) {
  std::ifstream in(flags.profile_path);
  if (!in) throw ParseError("cannot open " + flags.profile_path, 0);
  return parse_profile(in, num_jobs);
}

Mechanism mechanism_of(const CommonFlags& flags) {
  if (flags.mechanism == "proportional") return Mechanism::proportional;
  if (flags.mechanism == "marginal") return Mechanism::marginal;
  throw std::invalid_argument("mechanism must be proportional or marginal");
}

std::pair<int, int> grid_of(const CommonFlags& flags) {
  const std::size_t x = flags.grid.find('x');
  if (x == std::string::npos)
    throw std::invalid_argument("grid must look like 100x100");
  const int np2 = std::stoi(flags.grid.substr(0, x));
  const int nw2 = std::stoi(flags.grid.substr(x + 1));
  return {np2, nw2};
}

std::ofstream open_artifact(const CommonFlags& flags, const std::string& name) {
  std::filesystem::create_directories(flags.out_dir);
  const std::filesystem::path path = std::filesystem::path(flags.out_dir) / name;
  std::ofstream out(path);
  if (!out) throw std::ios_base::failure("cannot write " + path.string());
  std::cout << "wrote " << path.string() << "\n";
  return out;
}

int cmd_schedule(const CommonFlags& flags) {
  const Instance instance = load_instance(flags);
  const StrategyProfile profile =
      load_profile(flags, static_cast<int>(instance.jobs.size()));
  check_feasible(instance.jobs, profile, instance.config.min_gap);
  const SpeedSchedule schedule = yds_schedule(instance.jobs, profile);
  auto out = open_artifact(flags, "schedule.csv");
  write_schedule_csv(out, schedule, instance.config.alpha);
  std::cout << "segments=" << schedule.segments.size()
            << " energy=" << format_real(energy(schedule, instance.config.alpha))
            << "\n";
  return 0;
}

int cmd_shares(const CommonFlags& flags) {
  const Instance instance = load_instance(flags);
  const StrategyProfile profile =
      load_profile(flags, static_cast<int>(instance.jobs.size()));
  const CostReport report =
      penalties(instance.jobs, profile, mechanism_of(flags), instance.config);
  auto out = open_artifact(flags, "shares.csv");
  write_cost_report_csv(out, report);
  std::cout << "mechanism=" << flags.mechanism
            << " optimal_energy=" << format_real(report.optimal_energy)
            << " utilitarian=" << format_real(report.utilitarian_social_cost)
            << " effective=" << format_real(report.effective_social_cost)
            << "\n";
  return 0;
}

int cmd_bestresp(const CommonFlags& flags) {
  const Instance instance = load_instance(flags);
  const StrategyProfile profile =
      load_profile(flags, static_cast<int>(instance.jobs.size()));
  if (flags.player < 0 || flags.player >= static_cast<int>(instance.jobs.size()))
    throw std::invalid_argument("player out of range");
  const BestResponse br =
      numeric_best_response(instance.jobs, profile, flags.player,
                            mechanism_of(flags), instance.config);
  auto out = open_artifact(flags, "bestresp.csv");
  out << "player,d_star,value,regime\n";
  out << flags.player << ',' << format_real(br.deadline) << ','
      << format_real(br.value) << ',' << br.regime << "\n";
  std::cout << "player=" << flags.player << " d_star=" << format_real(br.deadline)
            << " value=" << format_real(br.value) << " regime=" << br.regime
            << "\n";
  return 0;
}

int cmd_dynamics(const CommonFlags& flags) {
  const Instance instance = load_instance(flags);
  const StrategyProfile start =
      load_profile(flags, static_cast<int>(instance.jobs.size()));
  DynamicsOptions options;
  options.max_steps = flags.max_steps;
  if (flags.order == "round_robin") {
    options.order = MoveOrder::round_robin;
  } else if (flags.order == "max_gain") {
    options.order = MoveOrder::max_gain;
  } else {
    throw std::invalid_argument("order must be round_robin or max_gain");
  }
  const DynamicsTrace trace = run_dynamics(instance.jobs, start,
                                           mechanism_of(flags), instance.config,
                                           options);
  auto out = open_artifact(flags, "trace.csv");
  write_trace_csv(out, trace);
  std::cout << "verdict=" << verdict_name(trace.verdict)
            << " steps=" << trace.steps.size();
  if (trace.verdict == Verdict::cycle)
    std::cout << " cycle_start=" << trace.cycle_start
              << " period=" << trace.cycle_period;
  std::cout << "\n";
  return 0;
}

int cmd_verify(const CommonFlags& flags) {
  const Instance instance = load_instance(flags);
  const StrategyProfile profile =
      load_profile(flags, static_cast<int>(instance.jobs.size()));
  const EquilibriumCheck check = verify_equilibrium(
      instance.jobs, profile, mechanism_of(flags), instance.config);
  auto out = open_artifact(flags, "verify.csv");
  out << "player,gain\n";
  for (std::size_t id = 0; id < check.gains.size(); ++id)
    out << id << ',' << format_real(check.gains[id]) << "\n";
  std::cout << "is_nash=" << (check.is_nash ? "true" : "false")
            << " worst_player=" << check.worst_player
            << " max_gain=" << format_real(check.max_gain) << "\n";
  return 0;
}

int cmd_scan(const CommonFlags& flags, double p2_lo, double p2_hi, double w2_lo,
             double w2_hi) {
  GameConfig config;
  config.alpha = flags.alpha.value_or(2.0);
  if (flags.epsilon) config.epsilon = *flags.epsilon;
  const auto [np2, nw2] = grid_of(flags);
  const RegionScan scan = uniqueness_scan(p2_lo, p2_hi, w2_lo, w2_hi, np2, nw2,
                                          config.alpha, config, flags.threads);
  {
    auto out = open_artifact(flags, "scan_cells.csv");
    write_scan_cells_csv(out, scan);
  }
  {
    auto out = open_artifact(flags, "scan_thresholds.csv");
    write_scan_thresholds_csv(out, scan);
  }
  int unique_cells = 0;
  for (const ScanCell& cell : scan.cells)
    if (cell.s21_ne && !cell.s12_ne && cell.dominance) ++unique_cells;
  std::cout << "cells=" << scan.cells.size() << " s21_only_cells="
            << unique_cells
            << " (uniqueness among the two scanned candidates only)\n";
  return 0;
}

int cmd_figures(const CommonFlags& flags) {
  GameConfig config;
  config.alpha = flags.alpha.value_or(3.0);
  validate_config(config);
  const double alpha = config.alpha;
  const std::vector<Job> jobs = two_player_jobs(1.0, 1.0);

  {  // Closed-form proportional response curve.
    std::vector<CurvePoint> points;
    const int samples = 400;
    for (int i = 0; i < samples; ++i) {
      const double d2 = 0.05 + (3.5 - 0.05) * i / (samples - 1);
      const BestResponse br = closed_form_response_prop(d2, alpha);
      points.push_back({d2, br.deadline, br.value, br.regime});
    }
    auto out = open_artifact(flags, "best_response_prop_closed.csv");
    write_curve_csv(out, points);
  }

  {  // Numeric proportional response, same curve for either player by symmetry.
    std::vector<CurvePoint> points;
    const int samples = 200;
    for (int i = 0; i < samples; ++i) {
      const double d2 = 0.05 + (3.5 - 0.05) * i / (samples - 1);
      StrategyProfile profile;
      profile.deadlines = {1.0, d2};
      const BestResponse br = numeric_best_response(
          jobs, profile, 0, Mechanism::proportional, config);
      points.push_back({d2, br.deadline, br.value, br.regime});
    }
    auto out = open_artifact(flags, "best_response_prop_numeric.csv");
    write_curve_csv(out, points);
  }

  const double shared_len = std::pow(0.5 * (alpha - 1.0), 1.0 / alpha);
  const double solo_len = std::pow(alpha - 1.0, 1.0 / alpha);
  const double delta_hi = std::pow(2.0, 1.0 / alpha);

  {  // Marginal response of the trailing player to d_0 = delta * shared_len.
    std::vector<CurvePoint> points;
    const int samples = 200;
    for (int i = 0; i < samples; ++i) {
      const double delta = 1.0 + (delta_hi - 1.0) * (i + 1) / (samples + 1);
      const double d0 = delta * shared_len;
      StrategyProfile profile;
      profile.deadlines = {d0, 4.0 * solo_len};
      const BestResponse br =
          numeric_best_response(jobs, profile, 1, Mechanism::marginal, config);
      points.push_back({d0, br.deadline, br.value, br.regime});
    }
    auto out = open_artifact(flags, "best_response_marg_trailing.csv");
    write_curve_csv(out, points);
  }

  {  // Marginal response of the leading player to the trailing response.
    std::vector<CurvePoint> points;
    const int samples = 200;
    for (int i = 0; i < samples; ++i) {
      const double delta = 1.0 + (delta_hi - 1.0) * (i + 1) / (samples + 1);
      const double d1 = solo_len * (1.0 + delta / delta_hi);
      StrategyProfile profile;
      profile.deadlines = {shared_len, d1};
      const BestResponse br =
          numeric_best_response(jobs, profile, 0, Mechanism::marginal, config);
      points.push_back({d1, br.deadline, br.value, br.regime});
    }
    auto out = open_artifact(flags, "best_response_marg_leading.csv");
    write_curve_csv(out, points);
  }

  {  // Uniqueness-region thresholds; the underlying analysis uses alpha = 2.
    GameConfig scan_config;
    scan_config.alpha = 2.0;
    const auto [np2, nw2] = grid_of(flags);
    const RegionScan scan = uniqueness_scan(0.1, 5.0, 0.1, 3.0, np2, nw2, 2.0,
                                            scan_config, flags.threads);
    auto out = open_artifact(flags, "uniqueness_thresholds.csv");
    write_scan_thresholds_csv(out, scan);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"speed-scaling scheduling game engine"};
  app.require_subcommand(1);

  CommonFlags flags;
  double p2_lo = 0.1, p2_hi = 5.0, w2_lo = 0.1, w2_hi = 3.0;

  const auto add_common = [&](CLI::App* cmd, bool needs_instance,
                              bool needs_profile) {
    if (needs_instance)
      cmd->add_option("--instance", flags.instance_path, "instance file")
          ->required();
    if (needs_profile)
      cmd->add_option("--profile", flags.profile_path, "deadline profile file")
          ->required();
    cmd->add_option("--alpha", flags.alpha, "energy exponent override");
    cmd->add_option("--epsilon", flags.epsilon, "tolerance override");
    cmd->add_option("--mode", flags.mode, "absolute|relative");
    cmd->add_option("--out", flags.out_dir, "output directory");
  };

  CLI::App* schedule = app.add_subcommand("schedule", "minimum-energy schedule");
  add_common(schedule, true, true);

  CLI::App* shares = app.add_subcommand("shares", "cost shares and penalties");
  add_common(shares, true, true);
  shares->add_option("--mechanism", flags.mechanism, "proportional|marginal");

  CLI::App* bestresp = app.add_subcommand("bestresp", "one player's best response");
  add_common(bestresp, true, true);
  bestresp->add_option("--mechanism", flags.mechanism, "proportional|marginal");
  bestresp->add_option("--player", flags.player, "responding player id");

  CLI::App* dynamics = app.add_subcommand("dynamics", "best-response dynamics");
  add_common(dynamics, true, true);
  dynamics->add_option("--mechanism", flags.mechanism, "proportional|marginal");
  dynamics->add_option("--max-steps", flags.max_steps, "step budget");
  dynamics->add_option("--order", flags.order, "round_robin|max_gain");

  CLI::App* verify = app.add_subcommand("verify", "equilibrium verification");
  add_common(verify, true, true);
  verify->add_option("--mechanism", flags.mechanism, "proportional|marginal");

  CLI::App* scan = app.add_subcommand("scan", "two-player uniqueness scan");
  add_common(scan, false, false);
  scan->add_option("--grid", flags.grid, "NxM cells");
  scan->add_option("--p2-min", p2_lo);
  scan->add_option("--p2-max", p2_hi);
  scan->add_option("--w2-min", w2_lo);
  scan->add_option("--w2-max", w2_hi);
  scan->add_option("--threads", flags.threads, "0 = auto");

  CLI::App* figures = app.add_subcommand(
      "figures", "regenerate all best-response and uniqueness curve data");
  add_common(figures, false, false);
  figures->add_option("--grid", flags.grid, "uniqueness scan grid");
  figures->add_option("--threads", flags.threads, "0 = auto");

  CLI11_PARSE(app, argc, argv);

  try {
    if (schedule->parsed()) return cmd_schedule(flags);
    if (shares->parsed()) return cmd_shares(flags);
    if (bestresp->parsed()) return cmd_bestresp(flags);
    if (dynamics->parsed()) return cmd_dynamics(flags);
    if (verify->parsed()) return cmd_verify(flags);
    if (scan->parsed()) return cmd_scan(flags, p2_lo, p2_hi, w2_lo, w2_hi);
    if (figures->parsed()) return cmd_figures(flags);
  } catch (const ParseError& e) {
    std::cerr << "parse error (line " << e.line << "): " << e.what() << "\n";
    return kExitParse;
  } catch (const BestResponseError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return 0;
}
