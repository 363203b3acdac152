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

#include "speedgame/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace speedgame {

namespace {

struct Slot {
  double start;
  double len;
};

// Smallest common speed level v with sum_s max(0, v*len_s - base_s) = want,
// over the given slots. Returns the per-slot fill through `fill`.
void water_fill(const std::vector<double>& base, const std::vector<double>& len,
                const std::vector<int>& slots, double want,
                std::vector<double>& fill, std::vector<int>& order) {
  order = slots;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return base[a] * len[b] < base[b] * len[a];  // base/len ascending
  });
  double len_sum = 0.0;
  double base_sum = 0.0;
  double level = 0.0;
  std::size_t active = 0;
  while (active < order.size()) {
    const int s = order[active];
    len_sum += len[s];
    base_sum += base[s];
    ++active;
    level = (want + base_sum) / len_sum;
    if (active == order.size()) break;
    const int next = order[active];
    if (level * len[next] <= base[next]) break;  // next slot stays empty
  }
  for (int s : slots) fill[s] = 0.0;
  for (std::size_t i = 0; i < active; ++i) {
    const int s = order[i];
    fill[s] = std::max(0.0, level * len[s] - base[s]);
  }
}

}  // namespace

double oracle_energy(const std::vector<Job>& jobs, const StrategyProfile& profile,
                     double alpha, int grid_n, const OracleOptions& options) {
  validate_jobs(jobs);
  check_feasible(jobs, profile);
  const int n = static_cast<int>(jobs.size());
  if (n == 0) return 0.0;

  std::vector<double> events;
  for (const Job& job : jobs) {
    events.push_back(job.release);
    events.push_back(profile.deadlines[job.id]);
  }
  std::sort(events.begin(), events.end());
  events.erase(std::unique(events.begin(), events.end()), events.end());
  if (grid_n < static_cast<int>(events.size()))
    throw std::invalid_argument("oracle grid must refine all event times");

  // Slot grid: every inter-event span gets cells proportional to its length.
  const double span = events.back() - events.front();
  std::vector<Slot> slots;
  for (std::size_t i = 0; i + 1 < events.size(); ++i) {
    const double a = events[i];
    const double b = events[i + 1];
    const int cells = std::max(
        1, static_cast<int>(std::llround(grid_n * (b - a) / span)));
    const double step = (b - a) / cells;
    for (int c = 0; c < cells; ++c) slots.push_back({a + c * step, step});
  }
  const int num_slots = static_cast<int>(slots.size());

  std::vector<double> len(num_slots);
  for (int s = 0; s < num_slots; ++s) len[s] = slots[s].len;

  // Per-job slot windows; slots never straddle a release or deadline.
  std::vector<std::vector<int>> window(n);
  for (const Job& job : jobs) {
    const double d = profile.deadlines[job.id];
    for (int s = 0; s < num_slots; ++s) {
      const double mid = slots[s].start + 0.5 * slots[s].len;
      if (mid > job.release && mid < d) window[job.id].push_back(s);
    }
    if (window[job.id].empty())
      throw std::invalid_argument("oracle grid too coarse for a job window");
  }

  // Start from the uniform spread of each job over its window.
  std::vector<std::vector<double>> alloc(n, std::vector<double>(num_slots, 0.0));
  std::vector<double> load(num_slots, 0.0);
  for (const Job& job : jobs) {
    double window_len = 0.0;
    for (int s : window[job.id]) window_len += len[s];
    for (int s : window[job.id]) {
      alloc[job.id][s] = job.workload * len[s] / window_len;
      load[s] += alloc[job.id][s];
    }
  }

  auto objective = [&]() {
    double total = 0.0;
    for (int s = 0; s < num_slots; ++s)
      if (load[s] > 0.0) total += std::pow(load[s] / len[s], alpha) * len[s];
    return total;
  };

  std::vector<double> base(num_slots, 0.0);
  std::vector<int> order;
  double prev = objective();
  for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
    for (const Job& job : jobs) {
      auto& x = alloc[job.id];
      for (int s : window[job.id]) base[s] = load[s] - x[s];
      water_fill(base, len, window[job.id], job.workload, x, order);
      for (int s : window[job.id]) load[s] = base[s] + x[s];
    }
    const double cur = objective();
    if (prev - cur < options.rel_tol * std::max(1.0, std::abs(cur))) {
      prev = cur;
      break;
    }
    prev = cur;
  }
  return prev;
}

}  // namespace speedgame
