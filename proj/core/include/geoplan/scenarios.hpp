#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <string>

#include "geoplan/planning.hpp"
#include "geoplan/scenario_spec.hpp"

namespace geoplan::scenarios {

/// Converts the boundary record into a solver scenario (degrees to radians,
/// hours to seconds). Throws ValidationError on invariant violations and
/// ParseError on a malformed epoch.
planning::Scenario make_scenario(const ScenarioSpec &spec);

/// Fourteen Chinese GEO satellites and two servicers, epoch
/// 2021-03-12T04:00:00Z, 30-day deadline, 20 h repairs, 1000 m/s budgets.
ScenarioSpec case_study_spec();
planning::Scenario case_study();

/// Inclinations uniform in [0, 10) deg, RAAN and anomaly uniform in
/// [0, 360) deg, 2000 m/s budgets, 24 h repairs.
ScenarioSpec random_scenario_spec(int n_targets, int n_servicers, double duration_days, std::uint64_t seed);
planning::Scenario random_scenario(int n_targets, int n_servicers, double duration_days, std::uint64_t seed);

std::string to_json(const ScenarioSpec &spec);
ScenarioSpec spec_from_json(const std::string &text);

planning::Scenario load(const std::filesystem::path &path);
void save(const planning::Scenario &scenario, const std::filesystem::path &path);

std::chrono::sys_seconds parse_epoch(const std::string &iso);

/// "YYYY-MM-DDTHH:MM:SS.sssZ" for epoch + offset seconds.
std::string format_iso(std::chrono::sys_seconds epoch, double offset_s);
/// "MM/DD HH:MM:SS" for epoch + offset seconds (rounded to the second).
std::string format_short(std::chrono::sys_seconds epoch, double offset_s);

} // namespace geoplan::scenarios
