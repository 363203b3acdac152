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

#ifndef SPEEDGAME_EQUILIBRIA_HPP
#define SPEEDGAME_EQUILIBRIA_HPP

#include <utility>
#include <vector>

#include "speedgame/best_response.hpp"
#include "speedgame/core.hpp"
#include "speedgame/mechanisms.hpp"

namespace speedgame {

struct EquilibriumCheck {
  bool is_nash = false;
  int worst_player = -1;          // player with the largest deviation gain
  double max_gain = 0.0;
  std::vector<double> gains;      // per-player deviation gains
};

// Computes every player's numeric best response; the profile is an
// eps-equilibrium when no deviation gains more than eps_rel * (1 + |penalty|).
// The relative form keeps the flag meaningful across widely scaled cells.
EquilibriumCheck verify_equilibrium(const std::vector<Job>& jobs,
                                    const StrategyProfile& profile,
                                    Mechanism mechanism, const GameConfig& config,
                                    double eps_rel = 1e-7,
                                    const BestResponseOptions& br_options = {});

// The normalized two-player instance of the uniqueness analysis:
// job 0 has w = p = 1, job 1 carries (w2, p2); both release at 0.
std::vector<Job> two_player_jobs(double w2, double p2);

enum class CandidateLabel { S21, S12 };

// One of the two back-to-back candidate equilibria. The job scheduled first
// runs in [0, len_first), the other in [len_first, len_first + len_second).
struct CandidateProfile {
  CandidateLabel label = CandidateLabel::S21;
  double len_first = 0.0;
  double len_second = 0.0;
  StrategyProfile profile;
};

// Candidate profiles for the normalized instance: S21 schedules job 1 (the
// (w2,p2) job) first, S12 schedules job 0 first. The first run length is
// sized against the combined priority, the trailing one against its own.
std::pair<CandidateProfile, CandidateProfile> candidate_profiles(double w2,
                                                                 double p2,
                                                                 double alpha);

// True when the effective social cost of S21 is minimal among the two
// candidates: w2 <= ((p1+p2)^((a-1)/a) - p1^((a-1)/a)) /
//                   ((p1+p2)^((a-1)/a) - p2^((a-1)/a)), with w1 = p1 = 1.
bool dominance_condition(double w2, double p2, double alpha);

struct ScanCell {
  double p2 = 0.0;
  double w2 = 0.0;
  bool s21_ne = false;
  bool s12_ne = false;
  bool dominance = false;
  bool failed = false;  // verification raised; cell skipped
};

// Per-column deviation thresholds at S12: player j prefers to deviate iff
// w2 <= t_j. A NaN threshold means the incentive did not change sign inside
// the scanned range; sign_changes counts the flips seen on the grid so that
// non-monotone columns are reported rather than hidden.
struct ColumnThresholds {
  double p2 = 0.0;
  double t1 = 0.0;
  double t2 = 0.0;
  double upper_bound = 0.0;  // dominance bound on w2
  int sign_changes_1 = 0;
  int sign_changes_2 = 0;
};

struct RegionScan {
  double alpha = 2.0;
  Mechanism mechanism = Mechanism::marginal;
  int np2 = 0;
  int nw2 = 0;
  double p2_lo = 0.0, p2_hi = 0.0;
  double w2_lo = 0.0, w2_hi = 0.0;
  std::vector<ScanCell> cells;  // indexed [ip2 * nw2 + iw2]
  std::vector<ColumnThresholds> thresholds;
};

// Tests both candidates for equilibrium on an np2 x nw2 grid under marginal
// cost sharing and extracts the per-column deviation thresholds by bisection.
// Cells whose verification fails are flagged and skipped. Columns are
// processed in parallel; assembly is deterministic.
RegionScan uniqueness_scan(double p2_lo, double p2_hi, double w2_lo,
                           double w2_hi, int np2, int nw2, double alpha,
                           const GameConfig& config, int threads = 0);

}  // namespace speedgame

#endif  // SPEEDGAME_EQUILIBRIA_HPP
