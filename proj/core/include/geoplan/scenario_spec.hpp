#pragma once

#include <optional>
#include <string>
#include <vector>

namespace geoplan {

// Boundary representation of a scenario: degrees and hours, exactly as
// written in scenario files.

struct OrbitRecord {
  std::string name;
  double inclination_deg = 0.0;
  double raan_deg = 0.0;
  double true_anomaly_deg = 0.0;

  friend bool operator==(const OrbitRecord &, const OrbitRecord &) = default;
};

struct ServicerRecord {
  OrbitRecord orbit;
  double dv_budget_mps = 0.0;

  friend bool operator==(const ServicerRecord &, const ServicerRecord &) = default;
};

struct TargetRecord {
  OrbitRecord orbit;
  double repair_hours = 0.0;

  friend bool operator==(const TargetRecord &, const TargetRecord &) = default;
};

struct ConstantsRecord {
  double mu_km3s2 = 0.0;
  double t_geo_s = 0.0;

  friend bool operator==(const ConstantsRecord &, const ConstantsRecord &) = default;
};

struct ScenarioSpec {
  std::string epoch; // ISO-8601 UTC, e.g. 2021-03-12T04:00:00Z
  double deadline_hours = 0.0;
  std::vector<ServicerRecord> servicers;
  std::vector<TargetRecord> targets;
  std::optional<ConstantsRecord> constants;

  friend bool operator==(const ScenarioSpec &, const ScenarioSpec &) = default;
};

} // namespace geoplan
