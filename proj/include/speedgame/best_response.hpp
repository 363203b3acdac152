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

#ifndef SPEEDGAME_BEST_RESPONSE_HPP
#define SPEEDGAME_BEST_RESPONSE_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "speedgame/core.hpp"
#include "speedgame/mechanisms.hpp"

namespace speedgame {

struct BestResponse {
  double deadline = 0.0;
  double value = 0.0;    // penalty at the minimizer
  std::string regime;    // smooth-piece label ("f2", "h4", "d3", ...)
};

// Search window and candidate kink positions of a player's penalty as a
// function of his own deadline. The penalty is smooth between consecutive
// breakpoints, so each gap can be searched by a line minimizer.
struct PiecewiseMinSpec {
  double lower = 0.0;  // strictly above the player's release
  double upper = 0.0;
  std::vector<double> breakpoints;  // sorted, strictly inside (lower, upper)
};

struct BestResponseOptions {
  double golden_tol = 1e-10;  // argument tolerance of the per-piece search
  int restarts = 3;           // extra seeded local searches per piece
  int max_doublings = 60;     // window growth cap
  bool refine = true;         // derivative-sign bisection around the optimum
};

// Raised when the search window keeps growing without the penalty slope
// turning positive.
struct BestResponseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Candidate kinks for the given player: deadlines of the other jobs, their
// reflections and midpoints toward the player's release, other releases, and
// midpoints of consecutive event times. Over-covering is harmless; every kink
// of the two-player penalties appears in this set.
PiecewiseMinSpec make_piecewise_spec(const std::vector<Job>& jobs,
                                     const StrategyProfile& profile, int player,
                                     const GameConfig& config, double upper);

// Global minimizer of the player's penalty over his deadline, all other
// deadlines fixed. Searches every smooth piece plus the breakpoints
// themselves; the upper window bound starts past every event and doubles
// until the penalty is increasing there. Throws BestResponseError when the
// doubling cap is hit, std::invalid_argument on infeasible fixed deadlines.
BestResponse numeric_best_response(const std::vector<Job>& jobs,
                                   const StrategyProfile& profile, int player,
                                   Mechanism mechanism, const GameConfig& config,
                                   const BestResponseOptions& options = {});

// Minimizer of a lone player's penalty: release + w ((alpha-1)/p)^(1/alpha).
double single_player_deadline(double w, double r, double p, double alpha);

// Two-player closed forms for the symmetric unit instance (w = p = 1,
// r = 0 for both players). Supported for alpha >= 2.

// Largest d_other for which following right behind the other job is optimal
// under proportional sharing.
double prop_threshold_low(double alpha);

// Value-tie point between the shared-interval optimum and halving the other
// player's deadline; found by bisection. Coincides with prop_threshold_low
// at alpha == 2, where the middle regime is empty.
double prop_threshold_high(double alpha);

// Best response under proportional sharing as a function of the other
// player's deadline. Regimes are labeled d4 (trail behind), d3 (shared
// interval optimum), d2 (half of d_other), d1 (unconstrained solo optimum).
BestResponse closed_form_response_prop(double d_other, double alpha);

enum class MarginalResponder {
  two_given_one,  // d_other = delta ((alpha-1)/2)^(1/alpha), 1 < delta < 2^(1/alpha)
  one_given_two,  // d_other = (alpha-1)^(1/alpha) (1 + delta 2^(-1/alpha))
};

// Best response under marginal sharing inside the contraction regime of the
// symmetric game. two_given_one returns d_other + (alpha-1)^(1/alpha)
// exactly; one_given_two minimizes the convex leading-piece penalty by
// bisecting its derivative, with the result strictly between
// ((alpha-1)/2)^(1/alpha) and d_other's scale.
BestResponse closed_form_response_marg(double d_other, double alpha,
                                       MarginalResponder responder);

}  // namespace speedgame

#endif  // SPEEDGAME_BEST_RESPONSE_HPP
