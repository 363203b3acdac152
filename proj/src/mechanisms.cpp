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

#include "speedgame/mechanisms.hpp"

#include <numeric>

#include "speedgame/yds.hpp"

namespace speedgame {

std::vector<double> proportional_shares(const std::vector<Job>& jobs,
                                        const StrategyProfile& profile,
                                        double alpha) {
  validate_jobs(jobs);
  check_feasible(jobs, profile);
  return per_job_energy(yds_schedule(jobs, profile), alpha,
                        static_cast<int>(jobs.size()));
}

std::vector<double> marginal_shares(const std::vector<Job>& jobs,
                                    const StrategyProfile& profile,
                                    double alpha) {
  validate_jobs(jobs);
  check_feasible(jobs, profile);
  const int n = static_cast<int>(jobs.size());
  YdsWorkspace ws;
  const double full = optimal_energy_ws(jobs, profile.deadlines, alpha, -1, ws);
  std::vector<double> shares(n, 0.0);
  for (int i = 0; i < n; ++i)
    shares[i] = full - optimal_energy_ws(jobs, profile.deadlines, alpha, i, ws);
  return shares;
}

double waiting_cost(const Job& job, double deadline, const GameConfig& config) {
  if (config.mode == WaitingCostMode::relative)
    return job.priority * (deadline - job.release);
  return job.priority * deadline;
}

CostReport penalties(const std::vector<Job>& jobs, const StrategyProfile& profile,
                     Mechanism mechanism, const GameConfig& config) {
  validate_config(config);
  validate_jobs(jobs);
  check_feasible(jobs, profile, config.min_gap);
  const int n = static_cast<int>(jobs.size());

  CostReport report;
  report.cost_share = mechanism == Mechanism::proportional
                          ? proportional_shares(jobs, profile, config.alpha)
                          : marginal_shares(jobs, profile, config.alpha);
  report.optimal_energy = optimal_energy(jobs, profile, config.alpha);
  report.waiting.resize(n);
  report.penalty.resize(n);
  for (const Job& job : jobs) {
    report.waiting[job.id] =
        waiting_cost(job, profile.deadlines[job.id], config);
    report.penalty[job.id] = report.cost_share[job.id] + report.waiting[job.id];
  }
  report.total_cost_share =
      std::accumulate(report.cost_share.begin(), report.cost_share.end(), 0.0);
  report.utilitarian_social_cost =
      std::accumulate(report.penalty.begin(), report.penalty.end(), 0.0);
  report.effective_social_cost =
      std::accumulate(report.waiting.begin(), report.waiting.end(), 0.0) +
      report.optimal_energy;
  return report;
}

double player_penalty(const std::vector<Job>& jobs, const StrategyProfile& profile,
                      int player, Mechanism mechanism, const GameConfig& config) {
  validate_jobs(jobs);
  check_feasible(jobs, profile, config.min_gap);
  YdsWorkspace ws;
  double share;
  if (mechanism == Mechanism::proportional) {
    share = player_energy_ws(jobs, profile.deadlines, config.alpha, player, ws);
  } else {
    share = optimal_energy_ws(jobs, profile.deadlines, config.alpha, -1, ws) -
            optimal_energy_ws(jobs, profile.deadlines, config.alpha, player, ws);
  }
  return share + waiting_cost(jobs[player], profile.deadlines[player], config);
}

double potential(const std::vector<Job>& jobs, const StrategyProfile& profile,
                 const GameConfig& config) {
  validate_jobs(jobs);
  check_feasible(jobs, profile, config.min_gap);
  double total = 0.0;
  for (const Job& job : jobs)
    total += waiting_cost(job, profile.deadlines[job.id], config);
  return total + optimal_energy(jobs, profile, config.alpha);
}

}  // namespace speedgame
