#include "geoplan_cli/reports.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "geoplan/scenarios.hpp"
#include "json.hpp"

namespace geoplan::cli {

namespace {

std::string num(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

} // namespace

Algorithm parse_algorithm(const std::string &name) {
  if (name == "lns-aga") {
    return Algorithm::LnsAga;
  }
  if (name == "ga") {
    return Algorithm::Ga;
  }
  if (name == "lambert-ga") {
    return Algorithm::LambertGa;
  }
  if (name == "oracle") {
    return Algorithm::Oracle;
  }
  throw std::invalid_argument("unknown algorithm '" + name + "' (expected lns-aga, ga, lambert-ga or oracle)");
}

std::string algorithm_name(Algorithm a) {
  switch (a) {
  case Algorithm::LnsAga:
    return "lns-aga";
  case Algorithm::Ga:
    return "ga";
  case Algorithm::LambertGa:
    return "lambert-ga";
  case Algorithm::Oracle:
    return "oracle";
  }
  return "?";
}

void RunConfig::validate() const {
  if (algorithms.empty()) {
    throw std::invalid_argument("no algorithm selected");
  }
  if (runs < 1) {
    throw std::invalid_argument("runs must be >= 1");
  }
  if (max_revolutions < 1) {
    throw std::invalid_argument("max revolutions must be >= 1");
  }
  ga.validate();
  lns.validate();
}

RunOutcome run_once(const planning::Scenario &scenario, Algorithm algorithm, std::uint64_t seed,
                    const RunConfig &config) {
  RunOutcome out;
  out.algorithm = algorithm;
  out.seed = seed;
  const auto start = std::chrono::steady_clock::now();
  switch (algorithm) {
  case Algorithm::LnsAga:
    out.result = search::solve_lns_aga(scenario, config.ga, config.lns, seed);
    break;
  case Algorithm::Ga:
    out.result = search::solve_ga(scenario, config.ga, seed);
    break;
  case Algorithm::LambertGa:
    out.result = search::solve_lambert_ga(scenario, config.ga, seed, search::default_tof_grid(scenario.constants));
    break;
  case Algorithm::Oracle: {
    auto best = planning::exhaustive_solve(scenario, config.max_revolutions, config.ga.penalties);
    out.result.best_plan = std::move(best.plan);
    out.result.best_evaluation = std::move(best.evaluation);
    out.result.seed = seed;
    break;
  }
  }
  out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

BenchSummary summarize(Algorithm algorithm, const std::vector<BenchRow> &rows) {
  BenchSummary s;
  s.algorithm = algorithm;
  std::vector<double> cost, wall;
  int feasible = 0;
  for (const BenchRow &r : rows) {
    if (r.algorithm != algorithm) {
      continue;
    }
    ++s.runs;
    wall.push_back(r.wall_seconds);
    if (!r.error.empty()) {
      continue;
    }
    cost.push_back(r.fitness);
    feasible += r.feasible;
  }
  if (s.runs > 0) {
    s.feasible_proportion = static_cast<double>(feasible) / s.runs;
    s.wall_min = *std::min_element(wall.begin(), wall.end());
    s.wall_max = *std::max_element(wall.begin(), wall.end());
    for (double w : wall) {
      s.wall_avg += w / static_cast<double>(wall.size());
    }
  }
  if (cost.empty()) {
    s.min_cost = s.avg_cost = s.std_cost = std::nan("");
    return s;
  }
  s.min_cost = *std::min_element(cost.begin(), cost.end());
  for (double c : cost) {
    s.avg_cost += c / static_cast<double>(cost.size());
  }
  if (cost.size() > 1) {
    double ss = 0.0;
    for (double c : cost) {
      ss += (c - s.avg_cost) * (c - s.avg_cost);
    }
    s.std_cost = std::sqrt(ss / static_cast<double>(cost.size() - 1));
  }
  return s;
}

std::string csv_field(const std::string &s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) {
    return s;
  }
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') {
      out += '"';
    }
    out += c;
  }
  return out + "\"";
}

void write_schedule_csv(std::ostream &out, const planning::Scenario &scenario, const search::SolveResult &result) {
  out << "servicer,target,dv1_x_mps,dv1_y_mps,dv1_z_mps,dv2_x_mps,dv2_y_mps,dv2_z_mps,"
         "dv1_time,dv1_time_iso,dv2_time,dv2_time_iso,coast_time_s,maneuver_time_s,revolutions,leg_dv_mps\n";
  const auto &legs = result.best_evaluation.leg_details;
  for (std::size_t s = 0; s < legs.size(); ++s) {
    const std::string servicer = csv_field(scenario.servicers[s].name);
    const auto &route = result.best_plan.routes[s];
    for (const auto &leg : legs[s]) {
      const auto &r = leg.rendezvous;
      out << servicer << ',' << csv_field(scenario.target(leg.target_id).name) << ',' << num(r.impulse1.x) << ','
          << num(r.impulse1.y) << ',' << num(r.impulse1.z) << ',' << num(r.impulse2.x) << ',' << num(r.impulse2.y)
          << ',' << num(r.impulse2.z) << ',' << scenarios::format_short(scenario.epoch, r.t1) << ','
          << scenarios::format_iso(scenario.epoch, r.t1) << ',' << scenarios::format_short(scenario.epoch, r.t2)
          << ',' << scenarios::format_iso(scenario.epoch, r.t2) << ',' << num(r.coast_time, 3) << ','
          << num(r.total_time, 3) << ',' << (route.revolutions.empty() ? 0 : r.revolutions) << ','
          << num(r.total_dv) << '\n';
    }
  }
}

void write_convergence_csv(std::ostream &out, const std::vector<search::GenerationStats> &history) {
  out << "generation,best_fitness,average_fitness\n";
  for (std::size_t g = 0; g < history.size(); ++g) {
    out << g + 1 << ',' << num(history[g].best) << ',' << num(history[g].average) << '\n';
  }
}

std::string summary_json(const planning::Scenario &scenario, const RunOutcome &run, const RunConfig &config) {
  using nlohmann::ordered_json;
  const auto &ev = run.result.best_evaluation;
  ordered_json j;
  j["algorithm"] = algorithm_name(run.algorithm);
  j["seed"] = run.seed;
  j["feasible"] = ev.feasible;
  j["fitness"] = ev.fitness;
  j["total_dv_mps"] = ev.total_dv;
  ordered_json per = ordered_json::array();
  for (std::size_t s = 0; s < scenario.servicers.size(); ++s) {
    per.push_back({{"servicer", scenario.servicers[s].name},
                   {"dv_mps", ev.per_servicer_dv[s]},
                   {"budget_mps", scenario.servicers[s].dv_budget},
                   {"targets", ordered_json::array()}});
    for (int t : run.result.best_plan.routes[s].targets) {
      per.back()["targets"].push_back(scenario.target(t).name);
    }
  }
  j["servicers"] = per;
  j["deadline_overrun_s"] = ev.deadline_penalty;
  j["budget_excess_mps"] = ev.budget_penalty;
  j["generations"] = run.result.generations_run;
  j["wall_time_s"] = run.wall_seconds;
  const auto &ga = config.ga;
  const auto &lns = config.lns;
  j["params"] = {{"population_size", ga.population_size},
                 {"min_iterations", ga.min_iterations},
                 {"stall_iterations", ga.stall_iterations},
                 {"max_iterations", ga.max_iterations},
                 {"pc_hi", ga.pc_hi},
                 {"pc_lo", ga.pc_lo},
                 {"pm_hi", ga.pm_hi},
                 {"pm_lo", ga.pm_lo},
                 {"phi", ga.penalties.phi},
                 {"gamma", ga.penalties.gamma},
                 {"remove_rate", lns.remove_rate},
                 {"elite_rate", lns.elite_fraction},
                 {"lns_iterations", lns.lns_iterations},
                 {"beta", lns.beta},
                 {"determinism_p", lns.determinism_p}};
  if (run.algorithm == Algorithm::Oracle) {
    j["params"]["max_revolutions"] = config.max_revolutions;
  }
  return j.dump(2) + "\n";
}

void write_bench_runs_csv(std::ostream &out, const std::vector<BenchRow> &rows) {
  out << "algorithm,seed,fitness,total_dv_mps,feasible,generations,wall_time_s,error\n";
  for (const BenchRow &r : rows) {
    out << algorithm_name(r.algorithm) << ',' << r.seed << ',' << num(r.fitness) << ',' << num(r.total_dv) << ','
        << (r.feasible ? 1 : 0) << ',' << r.generations << ',' << num(r.wall_seconds, 3) << ','
        << csv_field(r.error) << '\n';
  }
}

void write_bench_summary_csv(std::ostream &out, const std::vector<BenchSummary> &rows) {
  out << "algorithm,runs,min_cost,avg_cost,std_cost,feasible_proportion,wall_min_s,wall_avg_s,wall_max_s\n";
  for (const BenchSummary &s : rows) {
    out << algorithm_name(s.algorithm) << ',' << s.runs << ',' << num(s.min_cost) << ',' << num(s.avg_cost) << ','
        << num(s.std_cost) << ',' << num(s.feasible_proportion, 4) << ',' << num(s.wall_min, 3) << ','
        << num(s.wall_avg, 3) << ',' << num(s.wall_max, 3) << '\n';
  }
}

} // namespace geoplan::cli
