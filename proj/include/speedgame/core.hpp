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

#ifndef SPEEDGAME_CORE_HPP
#define SPEEDGAME_CORE_HPP

#include <string>
#include <vector>

namespace speedgame {

// One player's job. Workload and release time are public; the priority
// weight converts one unit of waiting time into cost units.
struct Job {
  int id = 0;
  double workload = 0.0;  // > 0
  double release = 0.0;   // >= 0
  double priority = 0.0;  // > 0
};

enum class WaitingCostMode {
  absolute,  // priority * deadline
  relative,  // priority * (deadline - release)
};

struct GameConfig {
  double alpha = 3.0;  // energy exponent, >= 2 required
  WaitingCostMode mode = WaitingCostMode::absolute;
  double epsilon = 1e-9;  // improvement threshold for dynamics / equilibria
  double min_gap = 1e-9;  // smallest allowed deadline - release
};

// The declared deadline of every player, indexed by job id.
struct StrategyProfile {
  std::vector<double> deadlines;
};

// Throws std::invalid_argument when a field violates the model constraints
// (nonpositive workload or priority, negative release, ids not 0..n-1).
void validate_jobs(const std::vector<Job>& jobs);

// Throws std::invalid_argument for alpha < 2 or epsilon <= 0.
void validate_config(const GameConfig& config);

// Non-fatal observations, e.g. alpha outside the physically motivated [2,3].
std::vector<std::string> config_warnings(const GameConfig& config);

// Throws std::invalid_argument unless d_i >= r_i + min_gap for every job.
void check_feasible(const std::vector<Job>& jobs, const StrategyProfile& profile,
                    double min_gap = 1e-9);

// A maximal run of one job (or idle time) at constant speed.
struct Segment {
  double start = 0.0;
  double end = 0.0;
  double speed = 0.0;
  int job = kIdleJob;

  static constexpr int kIdleJob = -1;
};

// Piecewise-constant speed schedule. Segments are kept sorted and
// non-overlapping; idle gaps between segments are implicit.
struct SpeedSchedule {
  std::vector<Segment> segments;
};

// Integral of speed^alpha over the schedule.
double energy(const SpeedSchedule& schedule, double alpha);

// Energy consumed while each job executes, indexed by job id.
std::vector<double> per_job_energy(const SpeedSchedule& schedule, double alpha,
                                   int num_jobs);

// Workload executed inside [t0, t1), all jobs combined.
double executed_work(const SpeedSchedule& schedule, double t0, double t1);

enum class ViolationKind {
  malformed_segment,
  overlap,
  workload_mismatch,
  before_release,
  after_deadline,
  edf_order,
};

struct Violation {
  ViolationKind kind;
  int job = -1;  // offending job id where applicable
  std::string message;
};

// Checks every schedule invariant: segment ordering, workload conservation
// (relative tolerance 1e-9), release/deadline windows, and preemptive EDF
// order with ties broken toward the smaller job id. Returns all violations
// found; an empty vector means the schedule is valid.
std::vector<Violation> validate_schedule(const SpeedSchedule& schedule,
                                         const std::vector<Job>& jobs,
                                         const StrategyProfile& profile);

}  // namespace speedgame

#endif  // SPEEDGAME_CORE_HPP
