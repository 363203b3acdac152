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

#include "speedgame/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace speedgame {

namespace {

bool is_skippable(const std::string& line) {
  for (char c : line) {
    if (c == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;  // blank
}

double parse_real(const std::string& token, int line) {
  std::size_t pos = 0;
  double value = 0.0;
  try {
    value = std::stod(token, &pos);
  } catch (const std::exception&) {
    throw ParseError("expected a number, got '" + token + "'", line);
  }
  if (pos != token.size())
    throw ParseError("trailing characters in number '" + token + "'", line);
  return value;
}

int parse_int(const std::string& token, int line) {
  std::size_t pos = 0;
  int value = 0;
  try {
    value = std::stoi(token, &pos);
  } catch (const std::exception&) {
    throw ParseError("expected an integer, got '" + token + "'", line);
  }
  if (pos != token.size())
    throw ParseError("trailing characters in integer '" + token + "'", line);
  return value;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream is(line);
  std::string token;
  while (is >> token) tokens.push_back(token);
  return tokens;
}

std::vector<std::string> split_on(const std::string& line, char sep) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : line) {
    if (c == sep) {
      tokens.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  tokens.push_back(current);
  return tokens;
}

}  // namespace

Instance parse_instance(std::istream& in) {
  Instance instance;
  std::string line;
  int line_number = 0;
  bool header_seen = false;

  while (std::getline(in, line)) {
    ++line_number;
    if (is_skippable(line)) continue;
    const std::vector<std::string> tokens = split_ws(line);

    if (!header_seen) {
      bool alpha_seen = false, mode_seen = false;
      for (const std::string& token : tokens) {
        const std::size_t eq = token.find('=');
        if (eq == std::string::npos)
          throw ParseError("header expects key=value pairs, got '" + token + "'",
                           line_number);
        const std::string key = token.substr(0, eq);
        const std::string value = token.substr(eq + 1);
        if (key == "alpha") {
          instance.config.alpha = parse_real(value, line_number);
          alpha_seen = true;
        } else if (key == "mode") {
          if (value == "absolute") {
            instance.config.mode = WaitingCostMode::absolute;
          } else if (value == "relative") {
            instance.config.mode = WaitingCostMode::relative;
          } else {
            throw ParseError("mode must be absolute or relative", line_number);
          }
          mode_seen = true;
        } else if (key == "epsilon") {
          instance.config.epsilon = parse_real(value, line_number);
        } else {
          throw ParseError("unknown header key '" + key + "'", line_number);
        }
      }
      if (!alpha_seen || !mode_seen)
        throw ParseError("header must set alpha=<real> and mode=<...>",
                         line_number);
      header_seen = true;
      continue;
    }

    if (tokens.size() != 4)
      throw ParseError("job line expects 'id w r p'", line_number);
    Job job;
    job.id = parse_int(tokens[0], line_number);
    job.workload = parse_real(tokens[1], line_number);
    job.release = parse_real(tokens[2], line_number);
    job.priority = parse_real(tokens[3], line_number);
    instance.jobs.push_back(job);
  }

  if (!header_seen) throw ParseError("missing header line", line_number);
  try {
    validate_jobs(instance.jobs);
    validate_config(instance.config);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), line_number);
  }
  return instance;
}

StrategyProfile parse_profile(std::istream& in, int num_jobs) {
  StrategyProfile profile;
  profile.deadlines.assign(num_jobs, 0.0);
  std::vector<bool> seen(num_jobs, false);
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (is_skippable(line)) continue;
    const std::vector<std::string> tokens = split_ws(line);
    if (tokens.size() != 2)
      throw ParseError("profile line expects 'id d'", line_number);
    const int id = parse_int(tokens[0], line_number);
    if (id < 0 || id >= num_jobs)
      throw ParseError("unknown job id " + tokens[0], line_number);
    if (seen[id]) throw ParseError("duplicate job id " + tokens[0], line_number);
    seen[id] = true;
    profile.deadlines[id] = parse_real(tokens[1], line_number);
  }
  for (int id = 0; id < num_jobs; ++id)
    if (!seen[id])
      throw ParseError("missing deadline for job " + std::to_string(id),
                       line_number);
  return profile;
}

std::string format_real(double x) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.12g", x);
  return buffer;
}

void write_instance(std::ostream& out, const Instance& instance) {
  out << "alpha=" << format_real(instance.config.alpha) << " mode="
      << (instance.config.mode == WaitingCostMode::absolute ? "absolute"
                                                            : "relative")
      << "\n";
  for (const Job& job : instance.jobs)
    out << job.id << ' ' << format_real(job.workload) << ' '
        << format_real(job.release) << ' ' << format_real(job.priority) << "\n";
}

void write_profile(std::ostream& out, const StrategyProfile& profile) {
  for (std::size_t id = 0; id < profile.deadlines.size(); ++id)
    out << id << ' ' << format_real(profile.deadlines[id]) << "\n";
}

void write_schedule_csv(std::ostream& out, const SpeedSchedule& schedule,
                        double alpha) {
  out << "start,end,speed,job_id\n";
  for (const Segment& seg : schedule.segments)
    out << format_real(seg.start) << ',' << format_real(seg.end) << ','
        << format_real(seg.speed) << ',' << seg.job << "\n";
  out << "# energy=" << format_real(energy(schedule, alpha)) << "\n";
}

SpeedSchedule parse_schedule_csv(std::istream& in) {
  SpeedSchedule schedule;
  std::string line;
  int line_number = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_number;
    if (is_skippable(line)) continue;
    if (!header_seen) {
      header_seen = true;  // column header
      continue;
    }
    const std::vector<std::string> tokens = split_on(line, ',');
    if (tokens.size() != 4)
      throw ParseError("schedule row expects 4 columns", line_number);
    Segment seg;
    seg.start = parse_real(tokens[0], line_number);
    seg.end = parse_real(tokens[1], line_number);
    seg.speed = parse_real(tokens[2], line_number);
    seg.job = parse_int(tokens[3], line_number);
    schedule.segments.push_back(seg);
  }
  return schedule;
}

void write_cost_report_csv(std::ostream& out, const CostReport& report) {
  out << "id,share,waiting,penalty\n";
  for (std::size_t id = 0; id < report.cost_share.size(); ++id)
    out << id << ',' << format_real(report.cost_share[id]) << ','
        << format_real(report.waiting[id]) << ','
        << format_real(report.penalty[id]) << "\n";
  double waiting_total = 0.0;
  for (double w : report.waiting) waiting_total += w;
  out << "total," << format_real(report.total_cost_share) << ','
      << format_real(waiting_total) << ','
      << format_real(report.utilitarian_social_cost) << "\n";
  out << "# optimal_energy=" << format_real(report.optimal_energy)
      << " utilitarian=" << format_real(report.utilitarian_social_cost)
      << " effective=" << format_real(report.effective_social_cost) << "\n";
}

std::string verdict_name(Verdict verdict) {
  switch (verdict) {
    case Verdict::equilibrium: return "equilibrium";
    case Verdict::cycle: return "cycle";
    case Verdict::budget_exhausted: return "budget_exhausted";
    case Verdict::stalled: return "stalled";
  }
  return "unknown";
}

void write_trace_csv(std::ostream& out, const DynamicsTrace& trace) {
  out << "step,player,d_old,d_new,penalty_old,penalty_new,phi\n";
  int step_number = 0;
  for (const DynamicsStep& step : trace.steps) {
    out << ++step_number << ',' << step.player << ','
        << format_real(step.d_old) << ',' << format_real(step.d_new) << ','
        << format_real(step.penalty_old) << ','
        << format_real(step.penalty_new) << ',' << format_real(step.phi_after)
        << "\n";
  }
  out << "verdict=" << verdict_name(trace.verdict);
  if (trace.verdict == Verdict::cycle)
    out << " cycle_start=" << trace.cycle_start
        << " period=" << trace.cycle_period;
  out << " steps=" << trace.steps.size() << " order="
      << (trace.order == MoveOrder::round_robin ? "round_robin" : "max_gain")
      << " mechanism="
      << (trace.mechanism == Mechanism::proportional ? "proportional"
                                                     : "marginal")
      << "\n";
}

void write_scan_cells_csv(std::ostream& out, const RegionScan& scan) {
  out << "# alpha=" << format_real(scan.alpha) << " mechanism=marginal\n";
  out << "p2,w2,s21_ne,s12_ne,dominance\n";
  int failed = 0;
  for (const ScanCell& cell : scan.cells) {
    if (cell.failed) ++failed;
    out << format_real(cell.p2) << ',' << format_real(cell.w2) << ','
        << (cell.s21_ne ? 1 : 0) << ',' << (cell.s12_ne ? 1 : 0) << ','
        << (cell.dominance ? 1 : 0) << "\n";
  }
  if (failed > 0) out << "# failed_cells=" << failed << "\n";
}

void write_scan_thresholds_csv(std::ostream& out, const RegionScan& scan) {
  out << "# alpha=" << format_real(scan.alpha) << " mechanism=marginal\n";
  out << "p2,t1,t2,upper_bound\n";
  for (const ColumnThresholds& col : scan.thresholds)
    out << format_real(col.p2) << ',' << format_real(col.t1) << ','
        << format_real(col.t2) << ',' << format_real(col.upper_bound) << "\n";
  for (const ColumnThresholds& col : scan.thresholds) {
    if (col.sign_changes_1 != 1 || col.sign_changes_2 != 1)
      out << "# p2=" << format_real(col.p2)
          << " sign_changes_t1=" << col.sign_changes_1
          << " sign_changes_t2=" << col.sign_changes_2 << "\n";
  }
}

void write_curve_csv(std::ostream& out, const std::vector<CurvePoint>& points) {
  out << "d_other,d_star,value,regime\n";
  for (const CurvePoint& point : points)
    out << format_real(point.d_other) << ',' << format_real(point.d_star) << ','
        << format_real(point.value) << ',' << point.regime << "\n";
}

}  // namespace speedgame
