#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "geoplan/errors.hpp"
#include "geoplan/scenarios.hpp"

using namespace geoplan;

#ifndef GEOPLAN_TEST_DATA_DIR
#error "GEOPLAN_TEST_DATA_DIR must point at tests/data"
#endif

namespace {

std::vector<std::vector<std::string>> read_tsv(const std::string &path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  std::getline(in, line); // header
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, '\t')) {
      cells.push_back(cell);
    }
    rows.push_back(cells);
  }
  return rows;
}

// Two-sided Kolmogorov-Smirnov statistic against U(lo, hi).
double ks_uniform(std::vector<double> xs, double lo, double hi) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double cdf = (xs[i] - lo) / (hi - lo);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - cdf, cdf - static_cast<double>(i) / n});
  }
  return d;
}

std::filesystem::path temp_file(const std::string &name) {
  return std::filesystem::temp_directory_path() / ("geoplan_" + name);
}

} // namespace

TEST_CASE("case study matches the golden orbit table") {
  const ScenarioSpec spec = scenarios::case_study_spec();
  const auto rows = read_tsv(std::string(GEOPLAN_TEST_DATA_DIR) + "/table2.tsv");
  REQUIRE(rows.size() == spec.servicers.size() + spec.targets.size());
  for (const auto &row : rows) {
    REQUIRE(row.size() == 5);
    const int id = std::stoi(row[0]);
    const OrbitRecord &rec = id < 0 ? spec.servicers[static_cast<std::size_t>(-id - 1)].orbit
                                    : spec.targets[static_cast<std::size_t>(id - 1)].orbit;
    CHECK(rec.name == row[1]);
    CHECK(rec.inclination_deg == std::stod(row[2]));
    CHECK(rec.raan_deg == std::stod(row[3]));
    CHECK(rec.true_anomaly_deg == std::stod(row[4]));
  }
}

TEST_CASE("case study mission parameters") {
  const planning::Scenario sc = scenarios::case_study();
  CHECK(sc.target_count() == 14);
  CHECK(sc.servicer_count() == 2);
  CHECK(sc.deadline == 30 * 86400.0);
  CHECK(scenarios::format_iso(sc.epoch, 0.0) == "2021-03-12T04:00:00.000Z");
  CHECK(scenarios::format_iso(sc.epoch, sc.deadline) == "2021-04-11T04:00:00.000Z");
  for (const auto &s : sc.servicers) {
    CHECK(s.dv_budget == 1000.0);
  }
  for (const auto &t : sc.targets) {
    CHECK(t.repair_duration == 20 * 3600.0);
  }
  const auto &g2 = sc.target(4);
  CHECK(g2.name == "Beidou_G2");
  CHECK(g2.orbit.inclination == doctest::Approx(7.77 * astro::kDeg));
  CHECK(g2.orbit.raan == doctest::Approx(52.634 * astro::kDeg));
  CHECK(g2.orbit.arg_lat0 == doctest::Approx(328.007 * astro::kDeg));
  const auto &ssc1 = sc.servicers[0].orbit;
  CHECK(ssc1.inclination == 0.0);
  CHECK(ssc1.raan == 0.0);
  CHECK(ssc1.arg_lat0 == 0.0);
}

TEST_CASE("equatorial orbits measure the angle from the x axis") {
  ScenarioSpec spec = scenarios::case_study_spec();
  spec.servicers[0].orbit = {"eq", 0.0, 30.0, 10.0};
  const planning::Scenario sc = scenarios::make_scenario(spec);
  CHECK(sc.servicers[0].orbit.raan == 0.0);
  CHECK(sc.servicers[0].orbit.arg_lat0 == doctest::Approx(40.0 * astro::kDeg));
}

TEST_CASE("random scenarios") {
  SUBCASE("shape and fixed parameters") {
    const planning::Scenario sc = scenarios::random_scenario(10, 2, 15, 42);
    CHECK(sc.target_count() == 10);
    CHECK(sc.servicer_count() == 2);
    CHECK(sc.deadline == 15 * 86400.0);
    for (const auto &s : sc.servicers) {
      CHECK(s.dv_budget == 2000.0);
    }
    for (const auto &t : sc.targets) {
      CHECK(t.repair_duration == 86400.0);
    }
  }
  SUBCASE("deterministic per seed") {
    CHECK(scenarios::random_scenario_spec(10, 2, 15, 9) == scenarios::random_scenario_spec(10, 2, 15, 9));
    CHECK(scenarios::to_json(scenarios::random_scenario_spec(10, 2, 15, 9)) ==
          scenarios::to_json(scenarios::random_scenario_spec(10, 2, 15, 9)));
    CHECK_FALSE(scenarios::random_scenario_spec(10, 2, 15, 9) == scenarios::random_scenario_spec(10, 2, 15, 10));
  }
  SUBCASE("distributions") {
    const ScenarioSpec spec = scenarios::random_scenario_spec(10000, 1, 15, 2024);
    std::vector<double> inc, raan, anomaly;
    for (const auto &t : spec.targets) {
      CHECK(t.orbit.inclination_deg >= 0.0);
      CHECK(t.orbit.inclination_deg <= 10.0);
      CHECK(t.orbit.raan_deg >= 0.0);
      CHECK(t.orbit.raan_deg < 360.0);
      CHECK(t.orbit.true_anomaly_deg >= 0.0);
      CHECK(t.orbit.true_anomaly_deg < 360.0);
      inc.push_back(t.orbit.inclination_deg);
      raan.push_back(t.orbit.raan_deg);
      anomaly.push_back(t.orbit.true_anomaly_deg);
    }
    const double critical = 1.628 / std::sqrt(static_cast<double>(inc.size())); // alpha = 0.01
    CHECK(ks_uniform(inc, 0.0, 10.0) < critical);
    CHECK(ks_uniform(raan, 0.0, 360.0) < critical);
    CHECK(ks_uniform(anomaly, 0.0, 360.0) < critical);
  }
  SUBCASE("rejects empty fleets") { CHECK_THROWS_AS(scenarios::random_scenario(0, 1, 10, 1), ValidationError); }
}

TEST_CASE("save and load round-trip") {
  for (const planning::Scenario &sc : {scenarios::case_study(), scenarios::random_scenario(7, 3, 12.5, 77)}) {
    const auto path = temp_file("roundtrip.json");
    scenarios::save(sc, path);
    const planning::Scenario back = scenarios::load(path);
    CHECK(back.spec == sc.spec);
    CHECK(back.deadline == sc.deadline);
    CHECK(back.epoch == sc.epoch);
    REQUIRE(back.target_count() == sc.target_count());
    for (std::size_t i = 0; i < sc.target_count(); ++i) {
      CHECK(back.targets[i].orbit == sc.targets[i].orbit);
    }
    std::filesystem::remove(path);
  }

  ScenarioSpec with_constants = scenarios::case_study_spec();
  with_constants.constants = ConstantsRecord{398600.0, 86164.0};
  CHECK(scenarios::spec_from_json(scenarios::to_json(with_constants)) == with_constants);
  CHECK(scenarios::make_scenario(with_constants).constants.mu == 398600.0);
}

TEST_CASE("parse errors name the offending field") {
  const std::string good = scenarios::to_json(scenarios::random_scenario_spec(2, 1, 10, 1));

  std::string missing = good;
  const auto pos = missing.find("\"deadline_hours\"");
  missing.erase(pos, missing.find('\n', pos) - pos + 1);
  try {
    scenarios::spec_from_json(missing);
    FAIL("expected ParseError");
  } catch (const ParseError &e) {
    CHECK(std::string(e.what()).find("deadline_hours") != std::string::npos);
  }

  std::string unknown = good;
  unknown.insert(unknown.find('{') + 1, "\"color\": \"blue\",");
  try {
    scenarios::spec_from_json(unknown);
    FAIL("expected ParseError");
  } catch (const ParseError &e) {
    CHECK(std::string(e.what()).find("color") != std::string::npos);
  }

  try {
    scenarios::spec_from_json("{\n  \"epoch\": \n");
    FAIL("expected ParseError");
  } catch (const ParseError &e) {
    CHECK(std::string(e.what()).find("line") != std::string::npos);
  }

  CHECK_THROWS_AS(scenarios::load(temp_file("does_not_exist.json")), ParseError);
}

TEST_CASE("validation errors") {
  ScenarioSpec spec = scenarios::case_study_spec();
  spec.servicers[0].dv_budget_mps = -5.0;
  CHECK_THROWS_AS(scenarios::make_scenario(spec), ValidationError);

  spec = scenarios::case_study_spec();
  spec.deadline_hours = 0.0;
  CHECK_THROWS_AS(scenarios::make_scenario(spec), ValidationError);

  spec = scenarios::case_study_spec();
  spec.targets.clear();
  CHECK_THROWS_AS(scenarios::make_scenario(spec), ValidationError);

  spec = scenarios::case_study_spec();
  spec.targets[0].repair_hours = -1.0;
  CHECK_THROWS_AS(scenarios::make_scenario(spec), ValidationError);

  spec = scenarios::case_study_spec();
  spec.targets[0].orbit.raan_deg = std::nan("");
  CHECK_THROWS_AS(scenarios::make_scenario(spec), ValidationError);

  spec = scenarios::case_study_spec();
  spec.epoch = "2021-02-30T00:00:00Z";
  CHECK_THROWS_AS(scenarios::make_scenario(spec), ParseError);
}

TEST_CASE("timestamp formatting") {
  const auto epoch = scenarios::parse_epoch("2021-03-12T04:00:00Z");
  CHECK(scenarios::format_short(epoch, 4 * 3600 + 28 * 60 + 55) == "03/12 08:28:55");
  CHECK(scenarios::format_short(epoch, 20 * 3600 + 0.6) == "03/13 00:00:01");
  CHECK(scenarios::format_iso(epoch, 1.25) == "2021-03-12T04:00:01.250Z");
  CHECK_THROWS_AS(scenarios::parse_epoch("12 March 2021"), ParseError);
}
