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

#ifndef SPEEDGAME_YDS_HPP
#define SPEEDGAME_YDS_HPP

#include <optional>
#include <utility>
#include <vector>

#include "speedgame/core.hpp"

namespace speedgame {

// Sorted disjoint half-open intervals; the support of a partial schedule.
using IntervalList = std::vector<std::pair<double, double>>;

// Inserts [a,b) and merges overlapping or touching neighbours.
void support_insert(IntervalList& support, double a, double b);

// Measure of support ∩ [a,b).
double support_measure_within(const IntervalList& support, double a, double b);

// Candidate interval of the minimum-energy schedule construction. The
// included jobs are the unscheduled ones whose whole window fits in
// [start,end); the density is their total workload divided by the part of
// [start,end) not yet covered by the support.
struct DensityInterval {
  double start = 0.0;
  double end = 0.0;
  double domain_length = 0.0;
  double density = 0.0;
  std::vector<int> included_jobs;  // sorted by (deadline, id)
};

// Builds the candidate for [t,tp). Returns nullopt when no unscheduled job is
// included or the uncovered part of the interval has zero length.
std::optional<DensityInterval> density_interval(
    const std::vector<Job>& jobs, const std::vector<double>& deadlines,
    const std::vector<char>& unscheduled, const IntervalList& support, double t,
    double tp);

// Scratch buffers reused by repeated schedule computations. Callers that
// evaluate many profiles (best-response search, dynamics, scans) keep one
// workspace per thread to avoid reallocation.
struct YdsWorkspace {
  std::vector<char> unscheduled;
  std::vector<double> events;
  std::vector<double> remaining;
  std::vector<int> group;
  IntervalList support;
  IntervalList holes;
};

// Core solver. Assumes inputs already validated. Jobs with id == skip_job are
// left out of the instance (used for marginal cost shares). Segments are
// appended sorted by start time.
void yds_schedule_into(const std::vector<Job>& jobs,
                       const std::vector<double>& deadlines, int skip_job,
                       YdsWorkspace& ws, std::vector<Segment>& out);

// Minimum-energy preemptive schedule for the declared deadlines. Each job
// runs at one constant speed and the whole schedule is preemptive EDF.
// Throws std::invalid_argument on an infeasible profile.
SpeedSchedule yds_schedule(const std::vector<Job>& jobs,
                           const StrategyProfile& profile);

// energy(yds_schedule(jobs, profile), alpha).
double optimal_energy(const std::vector<Job>& jobs,
                      const StrategyProfile& profile, double alpha);

// Unchecked variants reusing a workspace; alpha handling as above.
double optimal_energy_ws(const std::vector<Job>& jobs,
                         const std::vector<double>& deadlines, double alpha,
                         int skip_job, YdsWorkspace& ws);

// Energy consumed by one job in the minimum-energy schedule (its
// proportional cost share).
double player_energy_ws(const std::vector<Job>& jobs,
                        const std::vector<double>& deadlines, double alpha,
                        int player, YdsWorkspace& ws);

}  // namespace speedgame

#endif  // SPEEDGAME_YDS_HPP
