#include "geoplan/scenarios.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <random>
#include <set>
#include <sstream>

#include "geoplan/errors.hpp"
#include "json.hpp"

namespace geoplan::scenarios {

namespace {

using json = nlohmann::ordered_json;
using astro::kDeg;

constexpr const char *kCaseStudyEpoch = "2021-03-12T04:00:00Z";

void require_finite(double value, const std::string &what) {
  if (!std::isfinite(value)) {
    throw ValidationError(what + " must be finite");
  }
}

astro::GeoOrbit to_orbit(const OrbitRecord &rec, const std::string &ctx) {
  require_finite(rec.inclination_deg, ctx + ".inclination_deg");
  require_finite(rec.raan_deg, ctx + ".raan_deg");
  require_finite(rec.true_anomaly_deg, ctx + ".true_anomaly_deg");
  if (rec.inclination_deg < 0.0 || rec.inclination_deg >= 180.0) {
    throw ValidationError(ctx + ".inclination_deg must be in [0, 180)");
  }
  // RAAN is undefined for equatorial orbits; the anomaly is then measured
  // from the inertial x axis.
  const double raan = rec.inclination_deg == 0.0 ? 0.0 : rec.raan_deg * kDeg;
  const double anomaly = rec.inclination_deg == 0.0 ? (rec.raan_deg + rec.true_anomaly_deg) * kDeg
                                                     : rec.true_anomaly_deg * kDeg;
  return astro::GeoOrbit::make(rec.inclination_deg * kDeg, raan, anomaly);
}

void check_keys(const json &obj, std::initializer_list<const char *> allowed, const std::string &ctx) {
  if (!obj.is_object()) {
    throw ParseError(ctx + ": expected an object");
  }
  const std::set<std::string> names(allowed.begin(), allowed.end());
  for (const auto &item : obj.items()) {
    if (!names.count(item.key())) {
      throw ParseError(ctx + ": unknown field '" + item.key() + "'");
    }
  }
}

const json &field(const json &obj, const char *key, const std::string &ctx) {
  const auto it = obj.find(key);
  if (it == obj.end()) {
    throw ParseError(ctx + ": missing field '" + key + "'");
  }
  return *it;
}

double number_field(const json &obj, const char *key, const std::string &ctx) {
  const json &v = field(obj, key, ctx);
  if (!v.is_number()) {
    throw ParseError(ctx + "." + key + ": expected a number");
  }
  return v.get<double>();
}

std::string string_field(const json &obj, const char *key, const std::string &ctx) {
  const json &v = field(obj, key, ctx);
  if (!v.is_string()) {
    throw ParseError(ctx + "." + key + ": expected a string");
  }
  return v.get<std::string>();
}

OrbitRecord orbit_from(const json &obj, const std::string &ctx) {
  return OrbitRecord{string_field(obj, "name", ctx), number_field(obj, "inclination_deg", ctx),
                     number_field(obj, "raan_deg", ctx), number_field(obj, "true_anomaly_deg", ctx)};
}

json orbit_json(const OrbitRecord &rec) {
  json j;
  j["name"] = rec.name;
  j["inclination_deg"] = rec.inclination_deg;
  j["raan_deg"] = rec.raan_deg;
  j["true_anomaly_deg"] = rec.true_anomaly_deg;
  return j;
}

} // namespace

std::chrono::sys_seconds parse_epoch(const std::string &iso) {
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
  char tail = '\0';
  const int got = std::sscanf(iso.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d%c", &y, &mo, &d, &h, &mi, &s, &tail);
  if (got < 6 || (got == 7 && tail != 'Z')) {
    throw ParseError("epoch: expected ISO-8601 UTC 'YYYY-MM-DDTHH:MM:SSZ', got '" + iso + "'");
  }
  using namespace std::chrono;
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || h > 23 || mi > 59 || s > 60) {
    throw ParseError("epoch: invalid calendar date '" + iso + "'");
  }
  return sys_days{ymd} + hours{h} + minutes{mi} + seconds{s};
}

std::string format_iso(std::chrono::sys_seconds epoch, double offset_s) {
  using namespace std::chrono;
  const auto ms = epoch + milliseconds{std::llround(offset_s * 1000.0)};
  const auto day_start = floor<days>(ms);
  const year_month_day ymd{day_start};
  const hh_mm_ss tod{ms - day_start};
  char buf[40];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02ld:%02ld:%02lld.%03lldZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<long>(tod.hours().count()), static_cast<long>(tod.minutes().count()),
                static_cast<long long>(tod.seconds().count()), static_cast<long long>(tod.subseconds().count()));
  return buf;
}

std::string format_short(std::chrono::sys_seconds epoch, double offset_s) {
  using namespace std::chrono;
  const auto t = epoch + seconds{std::llround(offset_s)};
  const auto day_start = floor<days>(t);
  const year_month_day ymd{day_start};
  const hh_mm_ss tod{t - day_start};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%02u/%02u %02ld:%02ld:%02lld", static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()), static_cast<long>(tod.hours().count()),
                static_cast<long>(tod.minutes().count()), static_cast<long long>(tod.seconds().count()));
  return buf;
}

planning::Scenario make_scenario(const ScenarioSpec &spec) {
  planning::Scenario sc;
  sc.spec = spec;
  sc.epoch = parse_epoch(spec.epoch);

  require_finite(spec.deadline_hours, "deadline_hours");
  if (spec.deadline_hours <= 0.0) {
    throw ValidationError("deadline_hours must be positive");
  }
  sc.deadline = spec.deadline_hours * 3600.0;

  if (spec.constants) {
    const auto &c = *spec.constants;
    if (!(c.mu_km3s2 > 0.0) || !(c.t_geo_s > 0.0) || !std::isfinite(c.mu_km3s2) || !std::isfinite(c.t_geo_s)) {
      throw ValidationError("constants must be positive and finite");
    }
    sc.constants = astro::PhysicalConstants::from(c.mu_km3s2, c.t_geo_s);
  } else {
    sc.constants = astro::PhysicalConstants::standard();
  }

  if (spec.servicers.empty() || spec.targets.empty()) {
    throw ValidationError("a scenario needs at least one servicer and one target");
  }
  for (std::size_t i = 0; i < spec.servicers.size(); ++i) {
    const auto &rec = spec.servicers[i];
    const std::string ctx = "servicers[" + std::to_string(i) + "]";
    require_finite(rec.dv_budget_mps, ctx + ".dv_budget_mps");
    if (rec.dv_budget_mps <= 0.0) {
      throw ValidationError(ctx + ".dv_budget_mps must be positive");
    }
    sc.servicers.push_back(
        planning::Servicer{static_cast<int>(i + 1), rec.orbit.name, to_orbit(rec.orbit, ctx), rec.dv_budget_mps});
  }
  for (std::size_t i = 0; i < spec.targets.size(); ++i) {
    const auto &rec = spec.targets[i];
    const std::string ctx = "targets[" + std::to_string(i) + "]";
    require_finite(rec.repair_hours, ctx + ".repair_hours");
    if (rec.repair_hours < 0.0) {
      throw ValidationError(ctx + ".repair_hours must be non-negative");
    }
    sc.targets.push_back(planning::Target{static_cast<int>(i + 1), rec.orbit.name, to_orbit(rec.orbit, ctx),
                                          rec.repair_hours * 3600.0});
  }
  return sc;
}

ScenarioSpec case_study_spec() {
  ScenarioSpec spec;
  spec.epoch = kCaseStudyEpoch;
  spec.deadline_hours = 30.0 * 24.0;
  spec.servicers = {
      {{"SSc1", 0.0, 0.0, 0.0}, 1000.0},
      {{"SSc2", 5.0, 0.0, 160.0}, 1000.0},
  };
  const OrbitRecord targets[] = {
      {"Beidou2_G7", 1.602, 66.76, 278.273},   {"Beidou2_G8", 0.306, 328.06, 156.03},
      {"Beidou_G1", 1.801, 45.112, 252.161},   {"Beidou_G2", 7.77, 52.634, 328.007},
      {"Beidou_G3", 1.895, 52.106, 274.212},   {"Beidou_G4", 1.066, 59.651, 144.684},
      {"Beidou_G5", 1.455, 67.407, 288.524},   {"Beidou_G6", 1.860, 85.654, 319.304},
      {"Chinasat_11", 0.092, 103.257, 331.948}, {"Fengyun_2E", 5.009, 68.044, 285.074},
      {"Fengyun_2F", 2.806, 83.11, 224.488},   {"Tianlian1_01", 4.816, 71.744, 337.758},
      {"Tianlian1_02", 2.211, 74.985, 229.245}, {"Tianlian1_03", 0.998, 98.186, 230.86},
  };
  for (const auto &t : targets) {
    spec.targets.push_back({t, 20.0});
  }
  return spec;
}

planning::Scenario case_study() { return make_scenario(case_study_spec()); }

ScenarioSpec random_scenario_spec(int n_targets, int n_servicers, double duration_days, std::uint64_t seed) {
  if (n_targets < 1 || n_servicers < 1) {
    throw ValidationError("random scenarios need at least one target and one servicer");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> inclination(0.0, 10.0);
  std::uniform_real_distribution<double> angle(0.0, 360.0);
  auto draw = [&](std::string name) {
    OrbitRecord rec;
    rec.name = std::move(name);
    rec.inclination_deg = inclination(rng);
    rec.raan_deg = angle(rng);
    rec.true_anomaly_deg = angle(rng);
    return rec;
  };

  ScenarioSpec spec;
  spec.epoch = kCaseStudyEpoch;
  spec.deadline_hours = duration_days * 24.0;
  for (int i = 0; i < n_servicers; ++i) {
    spec.servicers.push_back({draw("SSc" + std::to_string(i + 1)), 2000.0});
  }
  for (int i = 0; i < n_targets; ++i) {
    spec.targets.push_back({draw("T" + std::to_string(i + 1)), 24.0});
  }
  return spec;
}

planning::Scenario random_scenario(int n_targets, int n_servicers, double duration_days, std::uint64_t seed) {
  return make_scenario(random_scenario_spec(n_targets, n_servicers, duration_days, seed));
}

std::string to_json(const ScenarioSpec &spec) {
  json doc;
  doc["epoch"] = spec.epoch;
  doc["deadline_hours"] = spec.deadline_hours;
  doc["servicers"] = json::array();
  for (const auto &s : spec.servicers) {
    json j = orbit_json(s.orbit);
    j["dv_budget_mps"] = s.dv_budget_mps;
    doc["servicers"].push_back(j);
  }
  doc["targets"] = json::array();
  for (const auto &t : spec.targets) {
    json j = orbit_json(t.orbit);
    j["repair_hours"] = t.repair_hours;
    doc["targets"].push_back(j);
  }
  if (spec.constants) {
    doc["constants"] = {{"mu_km3s2", spec.constants->mu_km3s2}, {"t_geo_s", spec.constants->t_geo_s}};
  }
  return doc.dump(2) + "\n";
}

ScenarioSpec spec_from_json(const std::string &text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error &e) {
    throw ParseError(std::string("scenario: ") + e.what());
  }
  check_keys(doc, {"epoch", "deadline_hours", "servicers", "targets", "constants"}, "scenario");

  ScenarioSpec spec;
  spec.epoch = string_field(doc, "epoch", "scenario");
  spec.deadline_hours = number_field(doc, "deadline_hours", "scenario");

  const json &servicers = field(doc, "servicers", "scenario");
  if (!servicers.is_array()) {
    throw ParseError("scenario.servicers: expected an array");
  }
  for (std::size_t i = 0; i < servicers.size(); ++i) {
    const std::string ctx = "servicers[" + std::to_string(i) + "]";
    const json &s = servicers[i];
    check_keys(s, {"name", "inclination_deg", "raan_deg", "true_anomaly_deg", "dv_budget_mps"}, ctx);
    spec.servicers.push_back({orbit_from(s, ctx), number_field(s, "dv_budget_mps", ctx)});
  }

  const json &targets = field(doc, "targets", "scenario");
  if (!targets.is_array()) {
    throw ParseError("scenario.targets: expected an array");
  }
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const std::string ctx = "targets[" + std::to_string(i) + "]";
    const json &t = targets[i];
    check_keys(t, {"name", "inclination_deg", "raan_deg", "true_anomaly_deg", "repair_hours"}, ctx);
    spec.targets.push_back({orbit_from(t, ctx), number_field(t, "repair_hours", ctx)});
  }

  if (const auto it = doc.find("constants"); it != doc.end()) {
    check_keys(*it, {"mu_km3s2", "t_geo_s"}, "constants");
    spec.constants = ConstantsRecord{number_field(*it, "mu_km3s2", "constants"),
                                     number_field(*it, "t_geo_s", "constants")};
  }
  return spec;
}

planning::Scenario load(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open scenario file '" + path.string() + "'");
  }
  std::ostringstream text;
  text << in.rdbuf();
  return make_scenario(spec_from_json(text.str()));
}

void save(const planning::Scenario &scenario, const std::filesystem::path &path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error("cannot write scenario file '" + path.string() + "'");
  }
  out << to_json(scenario.spec);
  if (!out) {
    throw Error("failed writing scenario file '" + path.string() + "'");
  }
}

} // namespace geoplan::scenarios
