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

#include "speedgame/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace speedgame {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// Deviation gain of one player at the profile, relative-threshold adjusted:
// positive means the player prefers to move.
double deviation_excess(const std::vector<Job>& jobs,
                        const StrategyProfile& profile, int player,
                        Mechanism mechanism, const GameConfig& config,
                        double eps_rel, const BestResponseOptions& br_options) {
  const double current =
      player_penalty(jobs, profile, player, mechanism, config);
  const BestResponse br =
      numeric_best_response(jobs, profile, player, mechanism, config, br_options);
  return (current - br.value) - eps_rel * (1.0 + std::abs(current));
}

}  // namespace

EquilibriumCheck verify_equilibrium(const std::vector<Job>& jobs,
                                    const StrategyProfile& profile,
                                    Mechanism mechanism, const GameConfig& config,
                                    double eps_rel,
                                    const BestResponseOptions& br_options) {
  validate_jobs(jobs);
  validate_config(config);
  check_feasible(jobs, profile, config.min_gap);

  EquilibriumCheck check;
  check.is_nash = true;
  check.gains.resize(jobs.size(), 0.0);
  for (const Job& job : jobs) {
    const double current =
        player_penalty(jobs, profile, job.id, mechanism, config);
    const BestResponse br = numeric_best_response(jobs, profile, job.id,
                                                  mechanism, config, br_options);
    const double gain = current - br.value;
    check.gains[job.id] = gain;
    if (gain > check.max_gain || check.worst_player < 0) {
      check.max_gain = gain;
      check.worst_player = job.id;
    }
    if (gain > eps_rel * (1.0 + std::abs(current))) check.is_nash = false;
  }
  return check;
}

std::vector<Job> two_player_jobs(double w2, double p2) {
  if (!(w2 > 0.0) || !(p2 > 0.0))
    throw std::invalid_argument("w2 and p2 must be positive");
  return {Job{0, 1.0, 0.0, 1.0}, Job{1, w2, 0.0, p2}};
}

std::pair<CandidateProfile, CandidateProfile> candidate_profiles(double w2,
                                                                 double p2,
                                                                 double alpha) {
  if (!(w2 > 0.0) || !(p2 > 0.0))
    throw std::invalid_argument("w2 and p2 must be positive");
  const double root = std::pow(alpha - 1.0, 1.0 / alpha);
  const double combined = std::pow(1.0 + p2, 1.0 / alpha);

  CandidateProfile s21;
  s21.label = CandidateLabel::S21;
  s21.len_first = w2 * root / combined;             // job 1 ahead of job 0
  s21.len_second = 1.0 * root;                      // job 0 against p1 = 1
  s21.profile.deadlines = {s21.len_first + s21.len_second, s21.len_first};

  CandidateProfile s12;
  s12.label = CandidateLabel::S12;
  s12.len_first = 1.0 * root / combined;            // job 0 ahead of job 1
  s12.len_second = w2 * root / std::pow(p2, 1.0 / alpha);
  s12.profile.deadlines = {s12.len_first, s12.len_first + s12.len_second};

  return {s21, s12};
}

bool dominance_condition(double w2, double p2, double alpha) {
  if (!(w2 > 0.0) || !(p2 > 0.0))
    throw std::invalid_argument("w2 and p2 must be positive");
  const double e = (alpha - 1.0) / alpha;
  const double combined = std::pow(1.0 + p2, e);
  const double bound =
      (combined - 1.0) / (combined - std::pow(p2, e));  // w1 = p1 = 1
  return w2 <= bound;
}

RegionScan uniqueness_scan(double p2_lo, double p2_hi, double w2_lo,
                           double w2_hi, int np2, int nw2, double alpha,
                           const GameConfig& config, int threads) {
  if (!(p2_lo > 0.0) || !(w2_lo > 0.0) || p2_hi < p2_lo || w2_hi < w2_lo)
    throw std::invalid_argument("scan ranges must be positive and ordered");
  if (np2 < 1 || nw2 < 2)
    throw std::invalid_argument("scan grid needs at least 1x2 cells");

  GameConfig cell_config = config;
  cell_config.alpha = alpha;
  validate_config(cell_config);
  const double eps_rel = 1e-7;

  RegionScan scan;
  scan.alpha = alpha;
  scan.mechanism = Mechanism::marginal;
  scan.np2 = np2;
  scan.nw2 = nw2;
  scan.p2_lo = p2_lo;
  scan.p2_hi = p2_hi;
  scan.w2_lo = w2_lo;
  scan.w2_hi = w2_hi;
  scan.cells.resize(static_cast<std::size_t>(np2) * nw2);
  scan.thresholds.resize(np2);

  const auto p2_at = [&](int i) {
    return np2 == 1 ? p2_lo : p2_lo + (p2_hi - p2_lo) * i / (np2 - 1);
  };
  const auto w2_at = [&](int i) {
    return w2_lo + (w2_hi - w2_lo) * i / (nw2 - 1);
  };

  const auto wants_deviate_at_s12 = [&](int player, double p2, double w2) {
    const std::vector<Job> jobs = two_player_jobs(w2, p2);
    const auto [s21, s12] = candidate_profiles(w2, p2, alpha);
    (void)s21;
    return deviation_excess(jobs, s12.profile, player, Mechanism::marginal,
                            cell_config, eps_rel, {}) > 0.0;
  };

  const auto scan_column = [&](int ip2) {
    const double p2 = p2_at(ip2);

    bool prev_wants[2] = {false, false};
    int flips[2] = {0, 0};
    for (int iw2 = 0; iw2 < nw2; ++iw2) {
      const double w2 = w2_at(iw2);
      ScanCell& cell = scan.cells[static_cast<std::size_t>(ip2) * nw2 + iw2];
      cell.p2 = p2;
      cell.w2 = w2;
      try {
        const std::vector<Job> jobs = two_player_jobs(w2, p2);
        const auto [s21, s12] = candidate_profiles(w2, p2, alpha);
        cell.s21_ne = verify_equilibrium(jobs, s21.profile, Mechanism::marginal,
                                         cell_config, eps_rel)
                          .is_nash;
        cell.s12_ne = verify_equilibrium(jobs, s12.profile, Mechanism::marginal,
                                         cell_config, eps_rel)
                          .is_nash;
        cell.dominance = dominance_condition(w2, p2, alpha);
        for (int player = 0; player < 2; ++player) {
          const bool wants = wants_deviate_at_s12(player, p2, w2);
          if (iw2 > 0 && wants != prev_wants[player]) ++flips[player];
          prev_wants[player] = wants;
        }
      } catch (const std::exception&) {
        cell.failed = true;
      }
    }

    ColumnThresholds& col = scan.thresholds[ip2];
    col.p2 = p2;
    const double e = (alpha - 1.0) / alpha;
    const double combined = std::pow(1.0 + p2, e);
    col.upper_bound = (combined - 1.0) / (combined - std::pow(p2, e));
    col.sign_changes_1 = flips[0];
    col.sign_changes_2 = flips[1];
    for (int player = 0; player < 2; ++player) {
      double& t = player == 0 ? col.t1 : col.t2;
      bool lo_wants, hi_wants;
      try {
        lo_wants = wants_deviate_at_s12(player, p2, w2_lo);
        hi_wants = wants_deviate_at_s12(player, p2, w2_hi);
      } catch (const std::exception&) {
        t = kNan;
        continue;
      }
      if (!lo_wants || hi_wants) {
        t = kNan;  // incentive does not cross inside the scanned range
        continue;
      }
      double lo = w2_lo, hi = w2_hi;
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        bool wants;
        try {
          wants = wants_deviate_at_s12(player, p2, mid);
        } catch (const std::exception&) {
          break;
        }
        (wants ? lo : hi) = mid;
      }
      t = 0.5 * (lo + hi);
    }
  };

  int workers = threads > 0 ? threads
                            : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::max(1, std::min(workers, np2));
  if (workers == 1) {
    for (int ip2 = 0; ip2 < np2; ++ip2) scan_column(ip2);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w]() {
        for (int ip2 = w; ip2 < np2; ip2 += workers) scan_column(ip2);
      });
    }
    for (std::thread& th : pool) th.join();
  }
  return scan;
}

}  // namespace speedgame
