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

#include "speedgame/yds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace speedgame {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool edf_less(const std::vector<double>& deadlines, int a, int b) {
  if (deadlines[a] != deadlines[b]) return deadlines[a] < deadlines[b];
  return a < b;
}

// Appends the parts of [a,b) not covered by the support.
void holes_within(const IntervalList& support, double a, double b,
                  IntervalList& out) {
  out.clear();
  double cursor = a;
  for (const auto& [lo, hi] : support) {
    if (hi <= a) continue;
    if (lo >= b) break;
    if (lo > cursor) out.emplace_back(cursor, std::min(lo, b));
    cursor = std::max(cursor, hi);
    if (cursor >= b) break;
  }
  if (cursor < b) out.emplace_back(cursor, b);
}

void append_segment(std::vector<Segment>& out, double start, double end,
                    double speed, int job, double eps) {
  if (!out.empty()) {
    Segment& last = out.back();
    if (last.job == job && last.speed == speed &&
        std::abs(last.end - start) <= eps) {
      last.end = end;
      return;
    }
  }
  out.push_back({start, end, speed, job});
}

}  // namespace

void support_insert(IntervalList& support, double a, double b) {
  if (b <= a) return;
  IntervalList merged;
  merged.reserve(support.size() + 1);
  bool placed = false;
  for (const auto& iv : support) {
    if (iv.second < a || (placed && iv.first > b)) {
      merged.push_back(iv);
    } else if (iv.first > b) {
      if (!placed) {
        merged.emplace_back(a, b);
        placed = true;
      }
      merged.push_back(iv);
    } else {  // overlaps or touches [a,b)
      a = std::min(a, iv.first);
      b = std::max(b, iv.second);
    }
  }
  if (!placed) merged.emplace_back(a, b);
  std::sort(merged.begin(), merged.end());
  support = std::move(merged);
}

double support_measure_within(const IntervalList& support, double a, double b) {
  double total = 0.0;
  for (const auto& [lo, hi] : support) {
    const double x = std::max(lo, a);
    const double y = std::min(hi, b);
    if (y > x) total += y - x;
  }
  return total;
}

std::optional<DensityInterval> density_interval(
    const std::vector<Job>& jobs, const std::vector<double>& deadlines,
    const std::vector<char>& unscheduled, const IntervalList& support, double t,
    double tp) {
  if (tp <= t) return std::nullopt;
  DensityInterval result;
  result.start = t;
  result.end = tp;
  double total_work = 0.0;
  for (const Job& job : jobs) {
    if (!unscheduled[job.id]) continue;
    if (job.release >= t && deadlines[job.id] <= tp) {
      result.included_jobs.push_back(job.id);
      total_work += job.workload;
    }
  }
  if (result.included_jobs.empty()) return std::nullopt;
  result.domain_length = (tp - t) - support_measure_within(support, t, tp);
  if (result.domain_length <= 0.0) return std::nullopt;
  result.density = total_work / result.domain_length;
  std::sort(result.included_jobs.begin(), result.included_jobs.end(),
            [&](int a, int b) { return edf_less(deadlines, a, b); });
  return result;
}

void yds_schedule_into(const std::vector<Job>& jobs,
                       const std::vector<double>& deadlines, int skip_job,
                       YdsWorkspace& ws, std::vector<Segment>& out) {
  const int n = static_cast<int>(jobs.size());
  out.clear();

  ws.unscheduled.assign(n, 1);
  if (skip_job >= 0 && skip_job < n) ws.unscheduled[skip_job] = 0;
  ws.support.clear();
  ws.remaining.assign(n, 0.0);

  int remaining_jobs = 0;
  double time_scale = 1.0;
  for (int j = 0; j < n; ++j) {
    if (!ws.unscheduled[j]) continue;
    ++remaining_jobs;
    time_scale = std::max({time_scale, deadlines[j], jobs[j].release});
  }
  const double eps_t = 1e-12 * time_scale;

  while (remaining_jobs > 0) {
    // Candidate endpoints: release times and deadlines of unscheduled jobs.
    ws.events.clear();
    for (int j = 0; j < n; ++j) {
      if (!ws.unscheduled[j]) continue;
      ws.events.push_back(jobs[j].release);
      ws.events.push_back(deadlines[j]);
    }
    std::sort(ws.events.begin(), ws.events.end());
    ws.events.erase(std::unique(ws.events.begin(), ws.events.end()),
                    ws.events.end());

    // Maximal-density interval; ties resolved toward smaller start, then
    // smaller end, which is the enumeration order.
    double best_density = -1.0;
    double best_a = 0.0, best_b = 0.0;
    for (std::size_t i = 0; i + 1 < ws.events.size(); ++i) {
      for (std::size_t k = i + 1; k < ws.events.size(); ++k) {
        const double a = ws.events[i];
        const double b = ws.events[k];
        double work = 0.0;
        for (int j = 0; j < n; ++j) {
          if (ws.unscheduled[j] && jobs[j].release >= a && deadlines[j] <= b)
            work += jobs[j].workload;
        }
        if (work <= 0.0) continue;
        const double len = (b - a) - support_measure_within(ws.support, a, b);
        if (len <= 0.0) continue;  // zero-length domain: density undefined
        const double density = work / len;
        if (density > best_density) {
          best_density = density;
          best_a = a;
          best_b = b;
        }
      }
    }
    if (best_density < 0.0)
      throw std::logic_error("yds: no schedulable interval left");

    // Group = jobs contained in the chosen interval, in EDF order.
    ws.group.clear();
    for (int j = 0; j < n; ++j) {
      if (ws.unscheduled[j] && jobs[j].release >= best_a &&
          deadlines[j] <= best_b) {
        ws.group.push_back(j);
        ws.remaining[j] = jobs[j].workload;
      }
    }
    std::sort(ws.group.begin(), ws.group.end(),
              [&](int a, int b) { return edf_less(deadlines, a, b); });

    // Run the group by preemptive EDF at the group speed inside the part of
    // the interval not claimed by denser groups.
    const double sigma = best_density;
    holes_within(ws.support, best_a, best_b, ws.holes);
    for (const auto& [h0, h1] : ws.holes) {
      double t = h0;
      while (t < h1 - eps_t) {
        int pick = -1;
        for (int j : ws.group) {
          if (ws.remaining[j] > 0.0 && jobs[j].release <= t + eps_t) {
            pick = j;
            break;
          }
        }
        if (pick < 0) {
          double next_release = kInf;
          for (int j : ws.group)
            if (ws.remaining[j] > 0.0)
              next_release = std::min(next_release, jobs[j].release);
          if (next_release >= h1 - eps_t) break;
          t = next_release;
          continue;
        }
        double stop = std::min(t + ws.remaining[pick] / sigma, h1);
        for (int j : ws.group) {
          if (j == pick) break;  // earlier EDF rank: a future release preempts
          if (ws.remaining[j] > 0.0 && jobs[j].release > t + eps_t)
            stop = std::min(stop, jobs[j].release);
        }
        if (stop > t) {
          append_segment(out, t, stop, sigma, pick, eps_t);
          ws.remaining[pick] -= sigma * (stop - t);
          if (ws.remaining[pick] <= 1e-12 * jobs[pick].workload)
            ws.remaining[pick] = 0.0;
        }
        t = stop;
      }
    }

    for (int j : ws.group) {
      if (ws.remaining[j] > 1e-9 * jobs[j].workload)
        throw std::logic_error("yds: group job not completed in its interval");
      ws.unscheduled[j] = 0;
      --remaining_jobs;
    }
    support_insert(ws.support, best_a, best_b);
  }

  std::sort(out.begin(), out.end(),
            [](const Segment& a, const Segment& b) { return a.start < b.start; });
}

SpeedSchedule yds_schedule(const std::vector<Job>& jobs,
                           const StrategyProfile& profile) {
  validate_jobs(jobs);
  check_feasible(jobs, profile);
  YdsWorkspace ws;
  SpeedSchedule schedule;
  yds_schedule_into(jobs, profile.deadlines, -1, ws, schedule.segments);
  return schedule;
}

double optimal_energy(const std::vector<Job>& jobs,
                      const StrategyProfile& profile, double alpha) {
  if (jobs.empty()) return 0.0;
  return energy(yds_schedule(jobs, profile), alpha);
}

double optimal_energy_ws(const std::vector<Job>& jobs,
                         const std::vector<double>& deadlines, double alpha,
                         int skip_job, YdsWorkspace& ws) {
  static thread_local std::vector<Segment> segments;
  yds_schedule_into(jobs, deadlines, skip_job, ws, segments);
  double total = 0.0;
  for (const Segment& seg : segments)
    total += std::pow(seg.speed, alpha) * (seg.end - seg.start);
  return total;
}

double player_energy_ws(const std::vector<Job>& jobs,
                        const std::vector<double>& deadlines, double alpha,
                        int player, YdsWorkspace& ws) {
  static thread_local std::vector<Segment> segments;
  yds_schedule_into(jobs, deadlines, -1, ws, segments);
  double total = 0.0;
  for (const Segment& seg : segments)
    if (seg.job == player)
      total += std::pow(seg.speed, alpha) * (seg.end - seg.start);
  return total;
}

}  // namespace speedgame
