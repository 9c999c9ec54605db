#include "geoplan_cli/commands.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "geoplan/errors.hpp"
#include "geoplan/scenarios.hpp"
#include "geoplan_cli/reports.hpp"

namespace geoplan::cli {

namespace {

namespace fs = std::filesystem;

planning::Scenario load_scenario(const std::string &source) {
  if (source == "case-study") {
    return scenarios::case_study();
  }
  return scenarios::load(source);
}

// Writes through a temporary file so readers never see a partial report.
void write_file(const fs::path &path, const std::function<void(std::ostream &)> &body) {
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path());
  }
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) {
      throw std::runtime_error("cannot write " + tmp.string());
    }
    body(out);
    if (!out) {
      throw std::runtime_error("write failed for " + tmp.string());
    }
  }
  fs::rename(tmp, path);
}

void add_tuning_options(CLI::App &cmd, RunConfig &cfg) {
  cmd.add_option("--seed", cfg.seed, "Random seed (first seed for bench)")->capture_default_str();
  cmd.add_option("--pop-size", cfg.ga.population_size, "Population size")->capture_default_str();
  cmd.add_option("--min-iters", cfg.ga.min_iterations, "Minimum generations")->capture_default_str();
  cmd.add_option("--stall-iters", cfg.ga.stall_iterations, "Generations without improvement before stopping")
      ->capture_default_str();
  cmd.add_option("--max-iters", cfg.ga.max_iterations, "Hard cap on generations")->capture_default_str();
  cmd.add_option("--pc-hi", cfg.ga.pc_hi, "Upper crossover probability")->capture_default_str();
  cmd.add_option("--pc-lo", cfg.ga.pc_lo, "Lower crossover probability")->capture_default_str();
  cmd.add_option("--pm-hi", cfg.ga.pm_hi, "Upper mutation probability")->capture_default_str();
  cmd.add_option("--pm-lo", cfg.ga.pm_lo, "Lower mutation probability")->capture_default_str();
  cmd.add_option("--remove-rate", cfg.lns.remove_rate, "Fraction of targets removed by destroy")
      ->capture_default_str();
  cmd.add_option("--elite-rate", cfg.lns.elite_fraction, "Fraction of the population improved by LNS")
      ->capture_default_str();
  cmd.add_option("--lns-iters", cfg.lns.lns_iterations, "Destroy/repair rounds per elite")->capture_default_str();
  cmd.add_option("--beta", cfg.lns.beta, "Plane/phase weight in relatedness")->capture_default_str();
  cmd.add_option("--det-p", cfg.lns.determinism_p, "Determinism exponent of destroy")->capture_default_str();
  cmd.add_option("--phi", cfg.ga.penalties.phi, "Penalty per minute past the deadline")->capture_default_str();
  cmd.add_option("--gamma", cfg.ga.penalties.gamma, "Penalty per m/s over budget")->capture_default_str();
  cmd.add_option("--out", cfg.out_dir, "Output directory")->capture_default_str();
}

int write_solution(const planning::Scenario &sc, const RunOutcome &run, const RunConfig &cfg) {
  const fs::path dir = cfg.out_dir;
  write_file(dir / "schedule.csv", [&](std::ostream &o) { write_schedule_csv(o, sc, run.result); });
  if (run.algorithm != Algorithm::Oracle) {
    write_file(dir / "convergence.csv", [&](std::ostream &o) { write_convergence_csv(o, run.result.history); });
  }
  write_file(dir / "summary.json", [&](std::ostream &o) { o << summary_json(sc, run, cfg); });

  const auto &ev = run.result.best_evaluation;
  std::printf("%s seed %llu: fitness %.3f, total dv %.3f m/s, %s\n", algorithm_name(run.algorithm).c_str(),
              static_cast<unsigned long long>(run.seed), ev.fitness, ev.total_dv,
              ev.feasible ? "feasible" : "infeasible");
  return ev.feasible ? kExitFeasible : kExitInfeasible;
}

int cmd_bench(const planning::Scenario &sc, const RunConfig &cfg) {
  if (cfg.runs < 2) {
    throw std::invalid_argument("bench needs --runs >= 2");
  }
  std::vector<BenchRow> rows;
  for (Algorithm a : cfg.algorithms) {
    for (int i = 0; i < cfg.runs; ++i) {
      BenchRow row;
      row.algorithm = a;
      row.seed = cfg.seed + static_cast<std::uint64_t>(i);
      try {
        const RunOutcome run = run_once(sc, a, row.seed, cfg);
        row.fitness = run.result.best_evaluation.fitness;
        row.total_dv = run.result.best_evaluation.total_dv;
        row.feasible = run.result.best_evaluation.feasible;
        row.generations = run.result.generations_run;
        row.wall_seconds = run.wall_seconds;
      } catch (const std::exception &e) {
        row.error = e.what();
      }
      rows.push_back(row);
    }
  }
  std::vector<BenchSummary> summary;
  for (Algorithm a : cfg.algorithms) {
    summary.push_back(summarize(a, rows));
  }
  const fs::path dir = cfg.out_dir;
  write_file(dir / "bench_runs.csv", [&](std::ostream &o) { write_bench_runs_csv(o, rows); });
  write_file(dir / "bench_summary.csv", [&](std::ostream &o) { write_bench_summary_csv(o, summary); });
  write_bench_summary_csv(std::cout, summary);
  return kExitFeasible;
}

} // namespace

int run(int argc, const char *const *argv) {
  CLI::App app{"Multi-servicer GEO repair mission planner"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string scenario_source;
  std::string algo = "lns-aga";
  std::vector<std::string> algos{"lns-aga", "ga", "lambert-ga"};

  auto *solve = app.add_subcommand("solve", "Solve one scenario and write schedule, convergence and summary");
  solve->add_option("scenario", scenario_source, "Scenario JSON file, or 'case-study'")->required();
  solve->add_option("--algo", algo, "lns-aga | ga | lambert-ga | oracle")->capture_default_str();
  solve->add_option("--max-revolutions", cfg.max_revolutions, "Revolution cap for the oracle")
      ->capture_default_str();
  add_tuning_options(*solve, cfg);

  auto *bench = app.add_subcommand("bench", "Repeat solvers over consecutive seeds and summarize");
  bench->add_option("scenario", scenario_source, "Scenario JSON file, or 'case-study'")->required();
  bench->add_option("--algo", algos, "Algorithms to run (comma separated)")->delimiter(',')->capture_default_str();
  bench->add_option("--runs", cfg.runs, "Runs per algorithm")->capture_default_str();
  add_tuning_options(*bench, cfg);

  auto *oracle = app.add_subcommand("oracle", "Exhaustive optimum of a small scenario");
  oracle->add_option("scenario", scenario_source, "Scenario JSON file")->required();
  oracle->add_option("--max-revolutions", cfg.max_revolutions, "Largest revolution count tried per leg")
      ->capture_default_str();
  oracle->add_option("--phi", cfg.ga.penalties.phi, "Penalty per minute past the deadline")->capture_default_str();
  oracle->add_option("--gamma", cfg.ga.penalties.gamma, "Penalty per m/s over budget")->capture_default_str();
  oracle->add_option("--out", cfg.out_dir, "Output directory")->capture_default_str();

  int targets = 10, servicers = 2;
  double days = 15.0;
  std::string gen_out;
  auto *gen = app.add_subcommand("gen", "Generate a random scenario file");
  gen->add_option("--targets", targets, "Number of targets")->capture_default_str();
  gen->add_option("--servicers", servicers, "Number of servicers")->capture_default_str();
  gen->add_option("--days", days, "Mission duration in days")->capture_default_str();
  gen->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  gen->add_option("--out", gen_out, "Output scenario file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kExitFeasible : kExitError;
  }

  try {
    if (gen->parsed()) {
      scenarios::save(scenarios::random_scenario(targets, servicers, days, cfg.seed), gen_out);
      std::printf("wrote %s\n", gen_out.c_str());
      return kExitFeasible;
    }
    if (bench->parsed()) {
      cfg.algorithms.clear();
      for (const auto &a : algos) {
        cfg.algorithms.push_back(parse_algorithm(a));
      }
      cfg.validate();
      return cmd_bench(load_scenario(scenario_source), cfg);
    }
    cfg.algorithms = {oracle->parsed() ? Algorithm::Oracle : parse_algorithm(algo)};
    cfg.validate();
    const planning::Scenario sc = load_scenario(scenario_source);
    return write_solution(sc, run_once(sc, cfg.algorithms.front(), cfg.seed, cfg), cfg);
  } catch (const std::exception &e) {
    std::fprintf(stderr, "geoplan: %s\n", e.what());
    return kExitError;
  }
}

} // namespace geoplan::cli
