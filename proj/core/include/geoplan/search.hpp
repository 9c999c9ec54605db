#pragma once

// Hybrid large-neighborhood-search / adaptive genetic algorithm, its
// operators, and the plain GA and Lambert GA baselines.

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "geoplan/planning.hpp"

namespace geoplan::search {

using Rng = std::mt19937_64;
using planning::Chromosome;
using planning::Evaluation;
using planning::MissionPlan;
using planning::Scenario;

struct GaParams {
  int population_size = 100;
  int min_iterations = 100;
  int stall_iterations = 50;
  int max_iterations = 1000; // hard cap in case the best keeps creeping down
  double pc_hi = 0.9;
  double pc_lo = 0.7;
  double pm_hi = 0.2;
  double pm_lo = 0.01;
  planning::PenaltyWeights penalties;
  planning::SlackRule slack_rule = planning::SlackRule::Largest;

  /// Throws std::invalid_argument when a bound is out of range.
  void validate() const;
};

struct LnsParams {
  double remove_rate = 0.3;
  double determinism_p = 6.0;
  double beta = 0.5;
  int lns_iterations = 2;
  double elite_fraction = 0.1;
  /// Literal edge-adjacency reading of the same-servicer term instead of
  /// same-route membership.
  bool adjacency_relatedness = false;

  void validate() const;
};

struct GenerationStats {
  double best = 0.0;
  double average = 0.0;
};

struct SolveResult {
  MissionPlan best_plan;
  Evaluation best_evaluation;
  std::vector<GenerationStats> history;
  int generations_run = 0;
  std::uint64_t seed = 0;
};

// ---- genetic operators ----------------------------------------------------

std::vector<Chromosome> init_population(std::size_t m, std::size_t n, std::size_t size, Rng &rng);

/// Selection weight of a cost-type fitness: 1 / (F + 1e-12).
double selection_weight(double fitness);

/// Mating pool as indices into the population. Slot 0 holds the best
/// (lowest fitness) individual; the rest are drawn by roulette over the
/// selection weights.
std::vector<std::size_t> selection(const std::vector<double> &fitnesses, Rng &rng);

/// w_parent is the better (larger) selection weight of the pair.
double adaptive_pc(double w_parent, double w_avg, double w_max, const GaParams &params);
double adaptive_pm(double w_individual, double w_avg, double w_max, const GaParams &params);

/// Partially mapped crossover exchanging genes in [cut1, cut2).
std::pair<Chromosome, Chromosome> pmx_crossover(const Chromosome &a, const Chromosome &b, std::size_t cut1,
                                                std::size_t cut2);
/// PMX with two distinct cut points drawn uniformly from [0, length].
std::pair<Chromosome, Chromosome> pmx_crossover(const Chromosome &a, const Chromosome &b, Rng &rng);

Chromosome swap_genes(Chromosome c, std::size_t i, std::size_t j);
/// Exchanges two distinct, uniformly chosen positions.
Chromosome swap_mutation(const Chromosome &c, Rng &rng);

// ---- large neighborhood search ---------------------------------------------

/// Normalized orbital-difference cost between targets, precomputed once per
/// scenario.
class RelatednessModel {
public:
  RelatednessModel(const Scenario &scenario, double beta);

  /// Normalized cost C' in [0, 1].
  double normalized_cost(int i, int j) const;
  /// 1 / (C' + V + 1e-6) where V is 0 when both targets share a route
  /// (or are adjacent on it, in adjacency mode).
  double relatedness(int i, int j, const MissionPlan &plan, bool adjacency = false) const;

private:
  std::size_t m_;
  std::vector<double> cost_;
};

struct DestroyResult {
  std::vector<int> removed;
  MissionPlan partial;
};

DestroyResult destroy(const MissionPlan &plan, const LnsParams &params, const Scenario &scenario,
                      const RelatednessModel &model, Rng &rng,
                      planning::SlackRule rule = planning::SlackRule::Largest);

struct InsertionCost {
  double cost = 0.0; // fitness increase at the best feasible position
  std::size_t route = 0;
  std::size_t position = 0;
};

/// Cheapest feasible insertion of target t over all routes and slots.
/// Throws AllInfeasible when no slot keeps the route within its deadline and
/// budget.
InsertionCost insertion_cost(int t, const MissionPlan &partial, const Scenario &scenario,
                             const planning::PenaltyWeights &weights,
                             planning::SlackRule rule = planning::SlackRule::Largest);

/// Farthest insertion: repeatedly places the removed target whose best
/// insertion is most expensive.
MissionPlan repair(const std::vector<int> &removed, const MissionPlan &partial, const Scenario &scenario,
                   const planning::PenaltyWeights &weights,
                   planning::SlackRule rule = planning::SlackRule::Largest);

struct LnsOutcome {
  MissionPlan plan;
  Evaluation evaluation;
};

/// Hill-climbing destroy/repair. Stops at the first strict improvement or
/// after lns_iterations rounds.
LnsOutcome lns_improve(const MissionPlan &plan, const Evaluation &evaluation, const LnsParams &params,
                       const Scenario &scenario, const RelatednessModel &model,
                       const planning::PenaltyWeights &weights, Rng &rng,
                       planning::SlackRule rule = planning::SlackRule::Largest);

// ---- solvers ----------------------------------------------------------------

SolveResult solve_lns_aga(const Scenario &scenario, const GaParams &ga, const LnsParams &lns, std::uint64_t seed);

SolveResult solve_ga(const Scenario &scenario, const GaParams &ga, std::uint64_t seed);

/// Candidate leg flight times: multiples of T_geo/8 up to 3 T_geo.
std::vector<double> default_tof_grid(const astro::PhysicalConstants &consts);

/// Lambert-leg evaluation of per-servicer sequences. Each leg takes the
/// cheapest grid flight time within an equal share of the remaining time.
std::pair<MissionPlan, Evaluation> evaluate_lambert_plan(const Scenario &scenario,
                                                         const std::vector<std::vector<int>> &sequences,
                                                         const std::vector<double> &tof_grid,
                                                         const planning::PenaltyWeights &weights);

SolveResult solve_lambert_ga(const Scenario &scenario, const GaParams &ga, std::uint64_t seed,
                             const std::vector<double> &tof_grid);

} // namespace geoplan::search
