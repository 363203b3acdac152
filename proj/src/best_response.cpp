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

#include "speedgame/best_response.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "speedgame/yds.hpp"

namespace speedgame {

namespace {

constexpr double kGolden = 0.6180339887498949;  // 1/phi

// Penalty of one player as a function of his own deadline, everything else
// fixed. For marginal sharing the energy of the game without the player does
// not depend on his deadline, so it is computed once.
class PenaltyEvaluator {
 public:
  PenaltyEvaluator(const std::vector<Job>& jobs, const StrategyProfile& profile,
                   int player, Mechanism mechanism, const GameConfig& config)
      : jobs_(jobs),
        deadlines_(profile.deadlines),
        player_(player),
        mechanism_(mechanism),
        config_(config) {
    if (mechanism_ == Mechanism::marginal)
      energy_without_ = optimal_energy_ws(jobs_, deadlines_, config_.alpha,
                                          player_, ws_);
  }

  double operator()(double x) {
    deadlines_[player_] = x;
    double share;
    if (mechanism_ == Mechanism::proportional) {
      share = player_energy_ws(jobs_, deadlines_, config_.alpha, player_, ws_);
    } else {
      share = optimal_energy_ws(jobs_, deadlines_, config_.alpha, -1, ws_) -
              energy_without_;
    }
    return share + waiting_cost(jobs_[player_], x, config_);
  }

 private:
  const std::vector<Job>& jobs_;
  std::vector<double> deadlines_;
  int player_;
  Mechanism mechanism_;
  GameConfig config_;
  double energy_without_ = 0.0;
  YdsWorkspace ws_;
};

template <typename F>
std::pair<double, double> golden_section(F&& f, double a, double b, double tol) {
  double x1 = b - kGolden * (b - a);
  double x2 = a + kGolden * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGolden * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGolden * (b - a);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

// Bisects the sign of a central-difference derivative around x0. Function
// minimization alone locates the argument only to ~sqrt(eps); the derivative
// sign is resolvable down to ~1e-10, which the tight closed-form comparisons
// need. Falls back to x0 when no sign change brackets the point.
template <typename F>
double refine_by_derivative(F&& f, double lo, double hi, double x0) {
  const double scale = std::max(1.0, std::abs(x0));
  const double h = 4e-6 * scale;
  if (hi - lo <= 6.0 * h) return x0;
  const auto deriv = [&](double x) { return f(x + h) - f(x - h); };

  double half = 64.0 * h;
  double a = 0.0, b = 0.0;
  bool bracketed = false;
  for (int attempt = 0; attempt < 5; ++attempt) {
    a = std::max(lo + 2.0 * h, x0 - half);
    b = std::min(hi - 2.0 * h, x0 + half);
    if (a < b && deriv(a) < 0.0 && deriv(b) > 0.0) {
      bracketed = true;
      break;
    }
    half *= 4.0;
    if (a <= lo + 2.0 * h && b >= hi - 2.0 * h) break;
  }
  if (!bracketed) return x0;

  for (int it = 0; it < 100 && b - a > 1e-13 * scale; ++it) {
    const double mid = 0.5 * (a + b);
    (deriv(mid) < 0.0 ? a : b) = mid;
  }
  return 0.5 * (a + b);
}

// Penalty value of the solo optimum in the unit symmetric game,
// alpha (alpha-1)^((1-alpha)/alpha).
double solo_value(double alpha) {
  return alpha * std::pow(alpha - 1.0, (1.0 - alpha) / alpha);
}

// Shared-interval optimum value, alpha ((alpha-1)/2)^((1-alpha)/alpha).
double shared_value(double alpha) {
  return alpha * std::pow(0.5 * (alpha - 1.0), (1.0 - alpha) / alpha);
}

// Penalty when choosing exactly half the other player's deadline.
double half_value(double d_other, double alpha) {
  return 0.5 * d_other + std::pow(0.5 * d_other, 1.0 - alpha);
}

void require_unit_symmetric_alpha(double alpha) {
  if (!(alpha >= 2.0))
    throw std::invalid_argument(
        "closed-form two-player responses are supported for alpha >= 2");
}

}  // namespace

PiecewiseMinSpec make_piecewise_spec(const std::vector<Job>& jobs,
                                     const StrategyProfile& profile, int player,
                                     const GameConfig& config, double upper) {
  const Job& me = jobs[player];
  PiecewiseMinSpec spec;
  spec.lower = me.release + config.min_gap;
  spec.upper = upper;

  std::vector<double> events;
  events.push_back(me.release);
  for (const Job& job : jobs) {
    if (job.id == player) continue;
    events.push_back(job.release);
    events.push_back(profile.deadlines[job.id]);
  }
  std::sort(events.begin(), events.end());
  events.erase(std::unique(events.begin(), events.end()), events.end());

  std::vector<double>& bp = spec.breakpoints;
  for (double t : events) {
    bp.push_back(t);
    bp.push_back(2.0 * t - me.release);
    bp.push_back(0.5 * (t + me.release));
  }
  for (std::size_t i = 0; i + 1 < events.size(); ++i)
    bp.push_back(0.5 * (events[i] + events[i + 1]));

  std::sort(bp.begin(), bp.end());
  const double merge_tol = 1e-12 * std::max(1.0, std::abs(upper));
  std::vector<double> kept;
  for (double t : bp) {
    if (t <= spec.lower + merge_tol || t >= spec.upper - merge_tol) continue;
    if (!kept.empty() && t - kept.back() <= merge_tol) continue;
    kept.push_back(t);
  }
  spec.breakpoints = std::move(kept);
  return spec;
}

BestResponse numeric_best_response(const std::vector<Job>& jobs,
                                   const StrategyProfile& profile, int player,
                                   Mechanism mechanism, const GameConfig& config,
                                   const BestResponseOptions& options) {
  validate_jobs(jobs);
  validate_config(config);
  for (const Job& job : jobs) {
    if (job.id == player) continue;
    if (!(profile.deadlines[job.id] >= job.release + config.min_gap))
      throw std::invalid_argument("fixed deadlines must be feasible");
  }

  PenaltyEvaluator penalty(jobs, profile, player, mechanism, config);
  const Job& me = jobs[player];

  // Initial upper bound: past every event plus the worst-case solo length;
  // then grow until the penalty has positive slope at the end.
  double max_event = me.release;
  double total_work = 0.0;
  double min_priority = me.priority;
  for (const Job& job : jobs) {
    total_work += job.workload;
    min_priority = std::min(min_priority, job.priority);
    max_event = std::max({max_event, job.release,
                          job.id == player ? 0.0 : profile.deadlines[job.id]});
  }
  const double pad = std::pow(config.alpha - 1.0, 1.0 / config.alpha) * total_work /
                     std::pow(min_priority, 1.0 / config.alpha);
  double upper = max_event + pad;
  {
    // All candidate kinks stay inside the window so that piece labels are
    // stable ("f3" is the third piece regardless of the window size).
    PiecewiseMinSpec probe =
        make_piecewise_spec(jobs, profile, player, config, 1e300);
    if (!probe.breakpoints.empty())
      upper = std::max(upper, probe.breakpoints.back() + pad);
  }

  int doublings = 0;
  const double lower = me.release + config.min_gap;
  for (;; ++doublings) {
    if (doublings > options.max_doublings) {
      std::ostringstream os;
      os << "unbounded-window: penalty of player " << player
         << " still decreasing at d=" << upper << " after "
         << options.max_doublings << " doublings";
      throw BestResponseError(os.str());
    }
    const double h = 1e-7 * std::max(1.0, upper);
    if (penalty(upper) - penalty(upper - h) > 0.0) break;
    upper = lower + 2.0 * (upper - lower);
  }

  PiecewiseMinSpec spec =
      make_piecewise_spec(jobs, profile, player, config, upper);

  std::vector<double> edges;
  edges.push_back(spec.lower);
  edges.insert(edges.end(), spec.breakpoints.begin(), spec.breakpoints.end());
  edges.push_back(spec.upper);

  double best_x = 0.0;
  double best_f = std::numeric_limits<double>::infinity();
  int best_piece = 0;
  const char prefix = mechanism == Mechanism::proportional ? 'f' : 'h';

  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    const double a = edges[p];
    const double b = edges[p + 1];
    const double tol = options.golden_tol * std::max(1.0, std::abs(b));
    auto [x, fx] = golden_section(penalty, a, b, tol);

    std::mt19937 rng(0x5eedu + 977u * static_cast<unsigned>(p));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int r = 0; r < options.restarts; ++r) {
      double u = a + (b - a) * unif(rng);
      double v = a + (b - a) * unif(rng);
      if (u > v) std::swap(u, v);
      if (v - u < 0.05 * (b - a)) continue;
      auto [xr, fr] = golden_section(penalty, u, v, 1e4 * tol);
      if (fr < fx) {
        auto [xf, ff] = golden_section(
            penalty, std::max(a, xr - 0.1 * (b - a)),
            std::min(b, xr + 0.1 * (b - a)), tol);
        if (ff < fx) {
          x = xf;
          fx = ff;
        }
      }
    }

    if (options.refine) {
      const double xd = refine_by_derivative(penalty, a, b, x);
      const double fd = penalty(xd);
      // The two candidates agree to evaluation noise; prefer the refined
      // argument, whose location is derivative-accurate.
      if (fd <= fx + 1e-12 * (1.0 + std::abs(fx))) {
        x = xd;
        fx = fd;
      }
    }
    if (fx < best_f) {
      best_f = fx;
      best_x = x;
      best_piece = static_cast<int>(p) + 1;
    }
  }

  // Kinks themselves can be minima (e.g. matching half the other deadline).
  for (std::size_t i = 0; i < spec.breakpoints.size(); ++i) {
    const double x = spec.breakpoints[i];
    const double fx = penalty(x);
    if (fx < best_f) {
      best_f = fx;
      best_x = x;
      best_piece = static_cast<int>(i) + 2;  // owned by the piece to its right
    }
  }

  BestResponse result;
  result.deadline = best_x;
  result.value = best_f;
  result.regime = std::string(1, prefix) + std::to_string(best_piece);
  return result;
}

double single_player_deadline(double w, double r, double p, double alpha) {
  return r + w * std::pow((alpha - 1.0) / p, 1.0 / alpha);
}

double prop_threshold_low(double alpha) {
  require_unit_symmetric_alpha(alpha);
  return solo_value(alpha) * (std::pow(2.0, 1.0 - 1.0 / alpha) - 1.0);
}

double prop_threshold_high(double alpha) {
  require_unit_symmetric_alpha(alpha);
  const double target = shared_value(alpha);
  double lo = prop_threshold_low(alpha);
  double hi = 2.0 * std::pow(0.5 * (alpha - 1.0), 1.0 / alpha);
  if (half_value(lo, alpha) - target <= 0.0) return lo;  // empty at alpha == 2
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (half_value(mid, alpha) - target > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

BestResponse closed_form_response_prop(double d_other, double alpha) {
  require_unit_symmetric_alpha(alpha);
  if (!(d_other > 0.0))
    throw std::invalid_argument("d_other must be positive");
  const double solo_len = std::pow(alpha - 1.0, 1.0 / alpha);
  if (d_other <= prop_threshold_low(alpha))
    return {d_other + solo_len, d_other + solo_value(alpha), "d4"};
  if (d_other <= prop_threshold_high(alpha)) {
    const double x = 2.0 * std::pow(0.5 * (alpha - 1.0), 1.0 / alpha);
    return {x, shared_value(alpha), "d3"};
  }
  if (d_other <= 2.0 * solo_len)
    return {0.5 * d_other, half_value(d_other, alpha), "d2"};
  return {solo_len, solo_value(alpha), "d1"};
}

BestResponse closed_form_response_marg(double d_other, double alpha,
                                       MarginalResponder responder) {
  require_unit_symmetric_alpha(alpha);
  const double shared_len = std::pow(0.5 * (alpha - 1.0), 1.0 / alpha);
  const double solo_len = std::pow(alpha - 1.0, 1.0 / alpha);

  if (responder == MarginalResponder::two_given_one) {
    const double delta = d_other / shared_len;
    if (!(delta > 1.0 && delta < std::pow(2.0, 1.0 / alpha))) {
      std::ostringstream os;
      os << "d_other=" << d_other << " lies outside the contraction regime";
      throw std::invalid_argument(os.str());
    }
    return {d_other + solo_len, d_other + solo_value(alpha), "h4"};
  }

  // one_given_two: minimize the convex leading piece
  // x + x^(1-alpha) + (d2-x)^(1-alpha) - d2^(1-alpha).
  const double d2 = d_other;
  const double delta = (d2 / solo_len - 1.0) * std::pow(2.0, 1.0 / alpha);
  if (!(delta > 1.0 && delta < std::pow(2.0, 1.0 / alpha))) {
    std::ostringstream os;
    os << "d_other=" << d_other << " lies outside the contraction regime";
    throw std::invalid_argument(os.str());
  }
  const auto slope = [&](double x) {
    return 1.0 + (alpha - 1.0) * (std::pow(d2 - x, -alpha) - std::pow(x, -alpha));
  };
  double lo = shared_len;
  double hi = delta * shared_len;
  if (!(slope(lo) < 0.0) || !(slope(hi) > 0.0))
    throw std::invalid_argument(
        "contraction-regime slope signs violated; d_other out of range");
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (slope(mid) < 0.0 ? lo : hi) = mid;
  }
  const double x = 0.5 * (lo + hi);
  const double value = x + std::pow(x, 1.0 - alpha) + std::pow(d2 - x, 1.0 - alpha) -
                       std::pow(d2, 1.0 - alpha);
  return {x, value, "h1"};
}

}  // namespace speedgame
