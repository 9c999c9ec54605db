#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "geoplan/search.hpp"

namespace geoplan::cli {

enum class Algorithm { LnsAga, Ga, LambertGa, Oracle };

Algorithm parse_algorithm(const std::string &name);
std::string algorithm_name(Algorithm a);

struct RunConfig {
  std::vector<Algorithm> algorithms{Algorithm::LnsAga};
  std::uint64_t seed = 1;
  int runs = 20;
  search::GaParams ga;
  search::LnsParams lns;
  int max_revolutions = 4; // oracle only
  std::string out_dir = ".";

  void validate() const;
};

/// One solver execution, however it was produced.
struct RunOutcome {
  Algorithm algorithm = Algorithm::LnsAga;
  std::uint64_t seed = 0;
  search::SolveResult result;
  double wall_seconds = 0.0;
};

RunOutcome run_once(const planning::Scenario &scenario, Algorithm algorithm, std::uint64_t seed,
                    const RunConfig &config);

struct BenchRow {
  Algorithm algorithm = Algorithm::LnsAga;
  std::uint64_t seed = 0;
  double fitness = 0.0;
  double total_dv = 0.0;
  bool feasible = false;
  int generations = 0;
  double wall_seconds = 0.0;
  std::string error; // non-empty when the run threw
};

struct BenchSummary {
  Algorithm algorithm = Algorithm::LnsAga;
  int runs = 0;
  double min_cost = 0.0;
  double avg_cost = 0.0;
  double std_cost = 0.0; // sample standard deviation
  double feasible_proportion = 0.0;
  double wall_min = 0.0;
  double wall_avg = 0.0;
  double wall_max = 0.0;
};

/// Statistics over the best fitness of each successful run.
BenchSummary summarize(Algorithm algorithm, const std::vector<BenchRow> &rows);

void write_schedule_csv(std::ostream &out, const planning::Scenario &scenario, const search::SolveResult &result);
void write_convergence_csv(std::ostream &out, const std::vector<search::GenerationStats> &history);
std::string summary_json(const planning::Scenario &scenario, const RunOutcome &run, const RunConfig &config);
void write_bench_runs_csv(std::ostream &out, const std::vector<BenchRow> &rows);
void write_bench_summary_csv(std::ostream &out, const std::vector<BenchSummary> &rows);

/// Quotes a CSV field when it contains a comma, quote or newline.
std::string csv_field(const std::string &s);

} // namespace geoplan::cli
