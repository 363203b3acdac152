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

#ifndef SPEEDGAME_ORACLE_HPP
#define SPEEDGAME_ORACLE_HPP

#include <vector>

#include "speedgame/core.hpp"

namespace speedgame {

struct OracleOptions {
  int max_sweeps = 10000;
  double rel_tol = 1e-12;  // stop when a sweep improves less than this
};

// Independent estimate of the minimum schedule energy, obtained without the
// max-density construction: time is cut into slots refining every release
// and deadline, each job's workload is distributed over the slots of its
// window, and the convex objective sum((load/len)^alpha * len) is minimized
// by exact per-job water-filling passes. With a slot grid that refines all
// breakpoints the discretized optimum equals the continuous one, so the
// result converges to the true minimum energy from above as the descent
// proceeds.
//
// Requires grid_n >= number of distinct event times; throws
// std::invalid_argument otherwise or on an infeasible profile.
double oracle_energy(const std::vector<Job>& jobs, const StrategyProfile& profile,
                     double alpha, int grid_n, const OracleOptions& options = {});

}  // namespace speedgame

#endif  // SPEEDGAME_ORACLE_HPP
