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

#ifndef SPEEDGAME_IO_HPP
#define SPEEDGAME_IO_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "speedgame/core.hpp"
#include "speedgame/dynamics.hpp"
#include "speedgame/equilibria.hpp"
#include "speedgame/mechanisms.hpp"

namespace speedgame {

struct ParseError : std::runtime_error {
  ParseError(const std::string& what, int line_number)
      : std::runtime_error(what), line(line_number) {}
  int line;
};

struct Instance {
  GameConfig config;
  std::vector<Job> jobs;
};

// Instance format: a header line `alpha=<real> mode=<absolute|relative>`
// followed by one `id w r p` line per job. Blank lines and lines starting
// with '#' are ignored. Throws ParseError with the offending line number.
Instance parse_instance(std::istream& in);

// Profile format: one `id d` line per job, every job exactly once.
StrategyProfile parse_profile(std::istream& in, int num_jobs);

// 12 significant digits; enough to diff artifacts while staying stable.
std::string format_real(double x);

void write_instance(std::ostream& out, const Instance& instance);
void write_profile(std::ostream& out, const StrategyProfile& profile);

// `start,end,speed,job_id` rows plus an energy summary line.
void write_schedule_csv(std::ostream& out, const SpeedSchedule& schedule,
                        double alpha);
SpeedSchedule parse_schedule_csv(std::istream& in);

// `id,share,waiting,penalty` rows, a `total` footer row, and aggregate
// comment line.
void write_cost_report_csv(std::ostream& out, const CostReport& report);

std::string verdict_name(Verdict verdict);

// `step,player,d_old,d_new,penalty_old,penalty_new,phi` rows followed by a
// key=value verdict summary line.
void write_trace_csv(std::ostream& out, const DynamicsTrace& trace);

// `p2,w2,s21_ne,s12_ne,dominance` cell rows.
void write_scan_cells_csv(std::ostream& out, const RegionScan& scan);

// `p2,t1,t2,upper_bound` threshold rows; columns whose deviation incentive
// flipped more than once are reported in trailing comment lines.
void write_scan_thresholds_csv(std::ostream& out, const RegionScan& scan);

struct CurvePoint {
  double d_other = 0.0;
  double d_star = 0.0;
  double value = 0.0;
  std::string regime;
};

// `d_other,d_star,value,regime` rows for best-response curves.
void write_curve_csv(std::ostream& out, const std::vector<CurvePoint>& points);

}  // namespace speedgame

#endif  // SPEEDGAME_IO_HPP
