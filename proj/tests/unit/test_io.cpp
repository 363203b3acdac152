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

#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "speedgame/yds.hpp"
#include "test_util.hpp"

using namespace speedgame;

TEST_CASE("instance parsing") {
  SUBCASE("round trip") {
    std::istringstream in(
        "alpha=2.5 mode=relative\n"
        "# comment line\n"
        "0 2 0 1\n"
        "1 1 0.5 2\n");
    const Instance instance = parse_instance(in);
    CHECK(instance.config.alpha == doctest::Approx(2.5));
    CHECK(instance.config.mode == WaitingCostMode::relative);
    REQUIRE(instance.jobs.size() == 2);
    CHECK(instance.jobs[1].release == doctest::Approx(0.5));

    std::ostringstream out;
    write_instance(out, instance);
    std::istringstream again(out.str());
    const Instance reparsed = parse_instance(again);
    CHECK(reparsed.config.alpha == instance.config.alpha);
    CHECK(reparsed.jobs.size() == instance.jobs.size());
    CHECK(reparsed.jobs[0].workload == instance.jobs[0].workload);
  }
  SUBCASE("parse errors carry line numbers") {
    std::istringstream missing_header("0 1 0 1\n");
    CHECK_THROWS_AS(parse_instance(missing_header), ParseError);

    std::istringstream bad_number("alpha=2 mode=absolute\n0 x 0 1\n");
    try {
      parse_instance(bad_number);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line == 2);
    }

    std::istringstream bad_mode("alpha=2 mode=sometimes\n");
    CHECK_THROWS_AS(parse_instance(bad_mode), ParseError);

    std::istringstream bad_ids("alpha=2 mode=absolute\n0 1 0 1\n0 1 0 1\n");
    CHECK_THROWS_AS(parse_instance(bad_ids), ParseError);

    std::istringstream bad_alpha("alpha=1.2 mode=absolute\n0 1 0 1\n");
    CHECK_THROWS_AS(parse_instance(bad_alpha), ParseError);
  }
}

TEST_CASE("profile parsing") {
  std::istringstream in("1 2.5\n0 1.5\n");
  const StrategyProfile profile = parse_profile(in, 2);
  CHECK(profile.deadlines[0] == doctest::Approx(1.5));
  CHECK(profile.deadlines[1] == doctest::Approx(2.5));

  std::istringstream missing("0 1.5\n");
  CHECK_THROWS_AS(parse_profile(missing, 2), ParseError);
  std::istringstream duplicate("0 1.5\n0 2.5\n");
  CHECK_THROWS_AS(parse_profile(duplicate, 2), ParseError);
  std::istringstream unknown("0 1.5\n7 2.5\n");
  CHECK_THROWS_AS(parse_profile(unknown, 2), ParseError);
}

TEST_CASE("schedule CSV round trip stays within tolerance") {
  std::mt19937 rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    const auto [jobs, profile] = testutil::random_instance(rng, 5);
    const SpeedSchedule schedule = yds_schedule(jobs, profile);
    std::ostringstream out;
    write_schedule_csv(out, schedule, 2.0);
    std::istringstream in(out.str());
    const SpeedSchedule parsed = parse_schedule_csv(in);
    REQUIRE(parsed.segments.size() == schedule.segments.size());
    for (std::size_t i = 0; i < parsed.segments.size(); ++i) {
      CHECK(std::abs(parsed.segments[i].start - schedule.segments[i].start) <=
            1e-9);
      CHECK(std::abs(parsed.segments[i].end - schedule.segments[i].end) <= 1e-9);
      CHECK(std::abs(parsed.segments[i].speed - schedule.segments[i].speed) <=
            1e-9);
      CHECK(parsed.segments[i].job == schedule.segments[i].job);
    }
  }
}

TEST_CASE("format_real uses 12 significant digits") {
  CHECK(format_real(5.0) == "5");
  CHECK(format_real(1.0 / 3.0) == "0.333333333333");
  CHECK(format_real(1.2599210498948732) == "1.25992104989");
}

TEST_CASE("cost report CSV carries the aggregate footer") {
  CostReport report;
  report.cost_share = {4.0, 1.0};
  report.waiting = {1.0, 2.0};
  report.penalty = {5.0, 3.0};
  report.total_cost_share = 5.0;
  report.optimal_energy = 5.0;
  report.utilitarian_social_cost = 8.0;
  report.effective_social_cost = 8.0;
  std::ostringstream out;
  write_cost_report_csv(out, report);
  const std::string text = out.str();
  CHECK(text.find("id,share,waiting,penalty\n") == 0);
  CHECK(text.find("total,5,3,8") != std::string::npos);
  CHECK(text.find("optimal_energy=5") != std::string::npos);
}
