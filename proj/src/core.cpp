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

#include "speedgame/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace speedgame {

namespace {

std::string describe_job(const Job& job) {
  std::ostringstream os;
  os << "job " << job.id << " (w=" << job.workload << ", r=" << job.release
     << ", p=" << job.priority << ")";
  return os.str();
}

// (deadline, id) lexicographic order used by preemptive EDF.
bool edf_before(double d_a, int id_a, double d_b, int id_b) {
  if (d_a != d_b) return d_a < d_b;
  return id_a < id_b;
}

}  // namespace

void validate_jobs(const std::vector<Job>& jobs) {
  const int n = static_cast<int>(jobs.size());
  std::vector<bool> seen(n, false);
  for (const Job& job : jobs) {
    if (job.workload <= 0.0)
      throw std::invalid_argument("nonpositive workload: " + describe_job(job));
    if (job.priority <= 0.0)
      throw std::invalid_argument("nonpositive priority: " + describe_job(job));
    if (job.release < 0.0)
      throw std::invalid_argument("negative release: " + describe_job(job));
    if (job.id < 0 || job.id >= n || seen[job.id])
      throw std::invalid_argument("job ids must be distinct integers 0..n-1");
    seen[job.id] = true;
  }
}

void validate_config(const GameConfig& config) {
  if (!(config.alpha >= 2.0))
    throw std::invalid_argument("alpha must be >= 2");
  if (!(config.epsilon > 0.0))
    throw std::invalid_argument("epsilon must be positive");
  if (!(config.min_gap > 0.0))
    throw std::invalid_argument("min_gap must be positive");
}

std::vector<std::string> config_warnings(const GameConfig& config) {
  std::vector<std::string> warnings;
  if (config.alpha > 3.0) {
    std::ostringstream os;
    os << "alpha=" << config.alpha
       << " is outside the device range [2,3]; results are extrapolations";
    warnings.push_back(os.str());
  }
  return warnings;
}

void check_feasible(const std::vector<Job>& jobs, const StrategyProfile& profile,
                    double min_gap) {
  if (profile.deadlines.size() != jobs.size())
    throw std::invalid_argument("profile size does not match job count");
  for (const Job& job : jobs) {
    const double d = profile.deadlines[job.id];
    if (!(d >= job.release + min_gap)) {
      std::ostringstream os;
      os << "infeasible deadline d=" << d << " for " << describe_job(job)
         << " (must exceed release by at least " << min_gap << ")";
      throw std::invalid_argument(os.str());
    }
  }
}

double energy(const SpeedSchedule& schedule, double alpha) {
  double total = 0.0;
  for (const Segment& seg : schedule.segments)
    total += std::pow(seg.speed, alpha) * (seg.end - seg.start);
  return total;
}

std::vector<double> per_job_energy(const SpeedSchedule& schedule, double alpha,
                                   int num_jobs) {
  std::vector<double> result(num_jobs, 0.0);
  for (const Segment& seg : schedule.segments) {
    if (seg.job < 0) continue;
    result[seg.job] += std::pow(seg.speed, alpha) * (seg.end - seg.start);
  }
  return result;
}

double executed_work(const SpeedSchedule& schedule, double t0, double t1) {
  double work = 0.0;
  for (const Segment& seg : schedule.segments) {
    const double lo = std::max(seg.start, t0);
    const double hi = std::min(seg.end, t1);
    if (hi > lo) work += seg.speed * (hi - lo);
  }
  return work;
}

std::vector<Violation> validate_schedule(const SpeedSchedule& schedule,
                                         const std::vector<Job>& jobs,
                                         const StrategyProfile& profile) {
  std::vector<Violation> out;
  const int n = static_cast<int>(jobs.size());

  double scale = 1.0;
  for (const Job& job : jobs)
    scale = std::max({scale, job.release, profile.deadlines.empty()
                                              ? 0.0
                                              : profile.deadlines[job.id]});
  const double time_tol = 1e-9 * scale;

  std::vector<Segment> segs = schedule.segments;
  std::sort(segs.begin(), segs.end(),
            [](const Segment& a, const Segment& b) { return a.start < b.start; });

  for (std::size_t i = 0; i < segs.size(); ++i) {
    const Segment& s = segs[i];
    if (!(s.end > s.start) || s.speed < 0.0 || s.job >= n) {
      std::ostringstream os;
      os << "malformed segment [" << s.start << "," << s.end << ") speed "
         << s.speed << " job " << s.job;
      out.push_back({ViolationKind::malformed_segment, s.job, os.str()});
      continue;
    }
    if (i > 0 && s.start < segs[i - 1].end - time_tol) {
      std::ostringstream os;
      os << "segments overlap near t=" << s.start;
      out.push_back({ViolationKind::overlap, s.job, os.str()});
    }
  }

  // Workload conservation and release/deadline windows.
  std::vector<double> done(n, 0.0);
  std::vector<double> completion(n, -1.0);
  for (const Segment& s : segs) {
    if (s.job < 0 || s.job >= n) continue;
    done[s.job] += s.speed * (s.end - s.start);
    completion[s.job] = std::max(completion[s.job], s.end);
    const Job& job = jobs[s.job];
    if (s.start < job.release - time_tol) {
      std::ostringstream os;
      os << "job " << s.job << " runs before release (" << s.start << " < "
         << job.release << ")";
      out.push_back({ViolationKind::before_release, s.job, os.str()});
    }
    if (s.end > profile.deadlines[s.job] + time_tol) {
      std::ostringstream os;
      os << "job " << s.job << " runs after deadline (" << s.end << " > "
         << profile.deadlines[s.job] << ")";
      out.push_back({ViolationKind::after_deadline, s.job, os.str()});
    }
  }
  for (const Job& job : jobs) {
    const double diff = std::abs(done[job.id] - job.workload);
    if (diff > 1e-9 * std::max(1.0, job.workload)) {
      std::ostringstream os;
      os << "workload mismatch for job " << job.id << ": scheduled "
         << done[job.id] << " of " << job.workload;
      out.push_back({ViolationKind::workload_mismatch, job.id, os.str()});
    }
  }

  // Preemptive EDF: while a segment of job j runs, no released unfinished job
  // may beat j in (deadline, id) order.
  for (const Segment& s : segs) {
    if (s.job < 0) continue;
    for (const Job& other : jobs) {
      if (other.id == s.job) continue;
      if (!edf_before(profile.deadlines[other.id], other.id,
                      profile.deadlines[s.job], s.job))
        continue;
      const double lo = std::max(s.start, other.release);
      const double hi = std::min(s.end, completion[other.id]);
      if (hi > lo + time_tol) {
        std::ostringstream os;
        os << "EDF order violated in [" << lo << "," << hi << "): job "
           << other.id << " should preempt job " << s.job;
        out.push_back({ViolationKind::edf_order, s.job, os.str()});
      }
    }
  }

  return out;
}

}  // namespace speedgame
