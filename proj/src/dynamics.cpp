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

#include "speedgame/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "speedgame/yds.hpp"

namespace speedgame {

namespace {

double sup_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double dist = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    dist = std::max(dist, std::abs(a[i] - b[i]));
  return dist;
}

double potential_ws(const std::vector<Job>& jobs,
                    const std::vector<double>& deadlines,
                    const GameConfig& config, YdsWorkspace& ws) {
  double total = 0.0;
  for (const Job& job : jobs)
    total += waiting_cost(job, deadlines[job.id], config);
  return total + optimal_energy_ws(jobs, deadlines, config.alpha, -1, ws);
}

double penalty_ws(const std::vector<Job>& jobs,
                  const std::vector<double>& deadlines, int player,
                  Mechanism mechanism, const GameConfig& config,
                  YdsWorkspace& ws) {
  double share;
  if (mechanism == Mechanism::proportional) {
    share = player_energy_ws(jobs, deadlines, config.alpha, player, ws);
  } else {
    share = optimal_energy_ws(jobs, deadlines, config.alpha, -1, ws) -
            optimal_energy_ws(jobs, deadlines, config.alpha, player, ws);
  }
  return share + waiting_cost(jobs[player], deadlines[player], config);
}

// Largest single move inside the window of steps [from, to).
double max_move(const std::vector<DynamicsStep>& steps, int from, int to) {
  double largest = 0.0;
  for (int s = from; s < to; ++s)
    largest = std::max(largest, std::abs(steps[s].d_new - steps[s].d_old));
  return largest;
}

}  // namespace

DynamicsTrace run_dynamics(const std::vector<Job>& jobs,
                           const StrategyProfile& start, Mechanism mechanism,
                           const GameConfig& config,
                           const DynamicsOptions& options) {
  validate_jobs(jobs);
  validate_config(config);
  check_feasible(jobs, start, config.min_gap);
  if (options.max_steps < 1)
    throw std::invalid_argument("max_steps must be at least 1");

  const int n = static_cast<int>(jobs.size());
  DynamicsTrace trace;
  trace.start = start;
  trace.mechanism = mechanism;
  trace.order = options.order;

  StrategyProfile profile = start;
  YdsWorkspace ws;
  std::vector<std::vector<double>> history;
  history.push_back(profile.deadlines);

  auto best_response_of = [&](int player) {
    try {
      return numeric_best_response(jobs, profile, player, mechanism, config,
                                   options.br);
    } catch (const std::exception& e) {
      std::ostringstream os;
      os << "best response of player " << player << " failed after "
         << trace.steps.size() << " steps: " << e.what();
      throw std::runtime_error(os.str());
    }
  };

  // Applies one improving move and reports whether the run should stop.
  auto apply_move = [&](int player, const BestResponse& br, double current) {
    DynamicsStep step;
    step.player = player;
    step.d_old = profile.deadlines[player];
    step.d_new = br.deadline;
    step.penalty_old = current;
    step.penalty_new = br.value;
    step.phi_before = potential_ws(jobs, profile.deadlines, config, ws);
    profile.deadlines[player] = br.deadline;
    step.phi_after = potential_ws(jobs, profile.deadlines, config, ws);
    trace.steps.push_back(step);
    history.push_back(profile.deadlines);

    if (options.stop_on_cycle) {
      const int m = static_cast<int>(history.size()) - 1;
      for (int k = 0; k < m; ++k) {
        if (sup_distance(history[k], history[m]) <= options.cycle_tol) {
          if (max_move(trace.steps, k, m) > options.cycle_tol) {
            trace.verdict = Verdict::cycle;
            trace.cycle_start = k;
            trace.cycle_period = m - k;
          } else {
            trace.verdict = Verdict::stalled;
          }
          return true;
        }
      }
    }
    return false;
  };

  bool stopped = false;
  if (options.order == MoveOrder::round_robin) {
    int player = 0;
    int idle_checks = 0;
    while (static_cast<int>(trace.steps.size()) < options.max_steps) {
      const BestResponse br = best_response_of(player);
      const double current =
          penalty_ws(jobs, profile.deadlines, player, mechanism, config, ws);
      if (current - br.value > config.epsilon) {
        idle_checks = 0;
        if (apply_move(player, br, current)) {
          stopped = true;
          break;
        }
      } else if (++idle_checks >= n) {
        trace.verdict = Verdict::equilibrium;
        stopped = true;
        break;
      }
      player = (player + 1) % n;
    }
  } else {  // max_gain
    while (static_cast<int>(trace.steps.size()) < options.max_steps) {
      int best_player = -1;
      double best_gain = config.epsilon;
      BestResponse best_br;
      double best_current = 0.0;
      for (int player = 0; player < n; ++player) {
        const BestResponse br = best_response_of(player);
        const double current =
            penalty_ws(jobs, profile.deadlines, player, mechanism, config, ws);
        const double gain = current - br.value;
        if (gain > best_gain) {
          best_gain = gain;
          best_player = player;
          best_br = br;
          best_current = current;
        }
      }
      if (best_player < 0) {
        trace.verdict = Verdict::equilibrium;
        stopped = true;
        break;
      }
      if (apply_move(best_player, best_br, best_current)) {
        stopped = true;
        break;
      }
    }
  }

  if (!stopped) trace.verdict = Verdict::budget_exhausted;
  trace.final_profile = profile;
  return trace;
}

std::vector<StrategyProfile> trace_profiles(const DynamicsTrace& trace) {
  std::vector<StrategyProfile> profiles;
  profiles.push_back(trace.start);
  StrategyProfile current = trace.start;
  for (const DynamicsStep& step : trace.steps) {
    current.deadlines[step.player] = step.d_new;
    profiles.push_back(current);
  }
  return profiles;
}

std::optional<CycleInfo> detect_cycle(const DynamicsTrace& trace, double tol) {
  const std::vector<StrategyProfile> profiles = trace_profiles(trace);
  for (int m = 1; m < static_cast<int>(profiles.size()); ++m) {
    for (int k = 0; k < m; ++k) {
      if (sup_distance(profiles[k].deadlines, profiles[m].deadlines) > tol)
        continue;
      if (max_move(trace.steps, k, m) > tol) return CycleInfo{k, m - k};
    }
  }
  return std::nullopt;
}

std::vector<double> delta_sequence(const DynamicsTrace& trace, double alpha) {
  if (trace.mechanism != Mechanism::marginal)
    throw std::runtime_error("delta_sequence: trace is not from marginal sharing");
  if (trace.start.deadlines.size() != 2)
    throw std::runtime_error("delta_sequence: trace is not a 2-player game");
  const double scale = std::pow(0.5 * (alpha - 1.0), 1.0 / alpha);
  const double upper = std::pow(2.0, 1.0 / alpha);
  std::vector<double> deltas;
  for (const DynamicsStep& step : trace.steps) {
    if (step.player != 0) continue;
    const double delta = step.d_new / scale;
    if (!(delta > 1.0 - 1e-9) || !(delta < upper)) {
      std::ostringstream os;
      os << "delta_sequence: normalized deadline " << delta
         << " leaves the contraction regime (1, " << upper << ")";
      throw std::runtime_error(os.str());
    }
    deltas.push_back(delta);
  }
  return deltas;
}

}  // namespace speedgame
