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

#ifndef SPEEDGAME_MECHANISMS_HPP
#define SPEEDGAME_MECHANISMS_HPP

#include <vector>

#include "speedgame/core.hpp"

namespace speedgame {

enum class Mechanism {
  proportional,  // each player pays the energy consumed while his job runs
  marginal,      // each player pays the energy increase caused by his presence
};

// Energy consumed during each player's own execution in the minimum-energy
// schedule. Sums exactly to the schedule energy (budget balance).
std::vector<double> proportional_shares(const std::vector<Job>& jobs,
                                        const StrategyProfile& profile,
                                        double alpha);

// E(OPT(d)) - E(OPT(d_{-i})) for each player, computed by n+1 full schedule
// runs.
std::vector<double> marginal_shares(const std::vector<Job>& jobs,
                                    const StrategyProfile& profile,
                                    double alpha);

// Per-player waiting cost under the configured mode.
double waiting_cost(const Job& job, double deadline, const GameConfig& config);

struct CostReport {
  std::vector<double> cost_share;
  std::vector<double> waiting;
  std::vector<double> penalty;        // cost_share + waiting, per player
  double total_cost_share = 0.0;
  double optimal_energy = 0.0;        // E(OPT(d))
  double utilitarian_social_cost = 0.0;  // sum of penalties
  double effective_social_cost = 0.0;    // sum of waiting costs + E(OPT(d))
};

CostReport penalties(const std::vector<Job>& jobs, const StrategyProfile& profile,
                     Mechanism mechanism, const GameConfig& config);

// Penalty of one player only (cost share + waiting cost).
double player_penalty(const std::vector<Job>& jobs, const StrategyProfile& profile,
                      int player, Mechanism mechanism, const GameConfig& config);

// Effective social cost of the profile. Under marginal cost sharing this is
// an exact potential: a unilateral deviation changes it by exactly the
// mover's penalty change.
double potential(const std::vector<Job>& jobs, const StrategyProfile& profile,
                 const GameConfig& config);

}  // namespace speedgame

#endif  // SPEEDGAME_MECHANISMS_HPP
