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

#ifndef SPEEDGAME_DYNAMICS_HPP
#define SPEEDGAME_DYNAMICS_HPP

#include <optional>
#include <vector>

#include "speedgame/best_response.hpp"
#include "speedgame/core.hpp"
#include "speedgame/mechanisms.hpp"

namespace speedgame {

struct DynamicsStep {
  int player = -1;
  double d_old = 0.0;
  double d_new = 0.0;
  double penalty_old = 0.0;
  double penalty_new = 0.0;
  double phi_before = 0.0;
  double phi_after = 0.0;
};

enum class Verdict {
  equilibrium,       // no player improves by more than epsilon
  cycle,             // a profile was revisited after real movement
  budget_exhausted,  // max_steps improving moves were taken
  stalled,           // revisit within tolerance but only sub-tolerance moves
};

enum class MoveOrder { round_robin, max_gain };

struct DynamicsOptions {
  int max_steps = 1000;
  MoveOrder order = MoveOrder::round_robin;
  bool stop_on_cycle = true;   // stop at the first detected revisit
  double cycle_tol = 1e-7;     // sup-norm tolerance on profiles
  BestResponseOptions br;
};

struct DynamicsTrace {
  StrategyProfile start;
  StrategyProfile final_profile;
  std::vector<DynamicsStep> steps;  // improving moves only
  Verdict verdict = Verdict::equilibrium;
  int cycle_start = -1;   // profile index where the cycle begins
  int cycle_period = 0;   // in steps
  Mechanism mechanism = Mechanism::proportional;
  MoveOrder order = MoveOrder::round_robin;
};

struct CycleInfo {
  int start = 0;
  int period = 0;
};

// Iterated best response: each scheduled player replaces his deadline by
// numeric_best_response whenever that improves his penalty by more than
// config.epsilon. Stops at an epsilon-equilibrium, a revisited profile, or
// the step budget. Best-response failures are rethrown with step context.
DynamicsTrace run_dynamics(const std::vector<Job>& jobs,
                           const StrategyProfile& start, Mechanism mechanism,
                           const GameConfig& config,
                           const DynamicsOptions& options);

// Profile after every step, starting with the initial one.
std::vector<StrategyProfile> trace_profiles(const DynamicsTrace& trace);

// First revisited profile (sup-norm tolerance) whose loop contains at least
// one move larger than the tolerance; nullopt when no such revisit exists.
std::optional<CycleInfo> detect_cycle(const DynamicsTrace& trace,
                                      double tol = 1e-7);

// Normalized first-player deadlines delta_k = d_0 / ((alpha-1)/2)^(1/alpha)
// after each player-0 move of a 2-player symmetric marginal trace. Throws
// std::runtime_error when the trace is not from that regime.
std::vector<double> delta_sequence(const DynamicsTrace& trace, double alpha);

}  // namespace speedgame

#endif  // SPEEDGAME_DYNAMICS_HPP
