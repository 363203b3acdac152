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

#ifndef SPEEDGAME_TESTS_TEST_UTIL_HPP
#define SPEEDGAME_TESTS_TEST_UTIL_HPP

#include <cmath>
#include <random>
#include <vector>

#include "speedgame/core.hpp"

namespace testutil {

struct RandomInstance {
  std::vector<speedgame::Job> jobs;
  speedgame::StrategyProfile profile;
};

inline RandomInstance random_instance(std::mt19937& rng, int max_jobs = 6) {
  std::uniform_int_distribution<int> njobs(1, max_jobs);
  std::uniform_real_distribution<double> w(0.2, 3.0);
  std::uniform_real_distribution<double> r(0.0, 3.0);
  std::uniform_real_distribution<double> p(0.2, 3.0);
  std::uniform_real_distribution<double> span(0.15, 4.0);
  const int n = njobs(rng);
  RandomInstance instance;
  for (int i = 0; i < n; ++i) {
    speedgame::Job job{i, w(rng), r(rng), p(rng)};
    instance.jobs.push_back(job);
    instance.profile.deadlines.push_back(job.release + span(rng));
  }
  return instance;
}

// Reference penalties of the symmetric unit two-player game, written as the
// explicit four-piece case formulas. These are the independent check for the
// schedule-and-share pipeline.
inline double prop_penalty_piecewise(double own, double other, double alpha) {
  if (own <= other / 2.0) return own + std::pow(own, 1.0 - alpha);
  if (own <= other) return own + std::pow(other / 2.0, 1.0 - alpha);
  if (own <= 2.0 * other) return own + std::pow(own / 2.0, 1.0 - alpha);
  return own + std::pow(own - other, 1.0 - alpha);
}

inline double marg_penalty_piecewise(double own, double other, double alpha) {
  if (own <= other / 2.0)
    return own + std::pow(own, 1.0 - alpha) + std::pow(other - own, 1.0 - alpha) -
           std::pow(other, 1.0 - alpha);
  if (own <= other)
    return own + (std::pow(2.0, alpha) - 1.0) * std::pow(other, 1.0 - alpha);
  if (own <= 2.0 * other)
    return own + std::pow(2.0, alpha) * std::pow(own, 1.0 - alpha) -
           std::pow(other, 1.0 - alpha);
  return own + std::pow(own - other, 1.0 - alpha);
}

// Local-minimum value table of the proportional game.
inline double table_g1(double alpha) {
  return alpha * std::pow(alpha - 1.0, 1.0 / alpha - 1.0);
}
inline double table_g2(double d2, double alpha) {
  return d2 / 2.0 + std::pow(d2 / 2.0, 1.0 - alpha);
}
inline double table_g3(double alpha) {
  return alpha * std::pow((alpha - 1.0) / 2.0, 1.0 / alpha - 1.0);
}
inline double table_g4(double d2, double alpha) { return d2 + table_g1(alpha); }

}  // namespace testutil

#endif  // SPEEDGAME_TESTS_TEST_UTIL_HPP
