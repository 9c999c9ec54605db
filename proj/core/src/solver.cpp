#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>

#include "geoplan/errors.hpp"
#include "geoplan/lambert.hpp"
#include "geoplan/search.hpp"

namespace geoplan::search {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kImprovementTolerance = 1e-9;

struct Individual {
  Chromosome chromosome;
  MissionPlan plan;
  Evaluation evaluation;
};

using Evaluator = std::function<Individual(const Chromosome &)>;
using ImproveHook = std::function<void(std::vector<Individual> &, Rng &)>;

bool fitter(const Individual &a, const Individual &b) { return a.evaluation.fitness < b.evaluation.fitness; }

SolveResult run_ga(const Scenario &scenario, const GaParams &ga, std::uint64_t seed, const Evaluator &evaluate,
                   const ImproveHook &improve) {
  ga.validate();
  const std::size_t m = scenario.target_count();
  const std::size_t n = scenario.servicer_count();
  const auto size = static_cast<std::size_t>(ga.population_size);
  Rng rng(seed);

  std::vector<Individual> pop;
  pop.reserve(size);
  for (Chromosome &c : init_population(m, n, size, rng)) {
    pop.push_back(evaluate(c));
  }
  if (improve) {
    improve(pop, rng);
  }

  SolveResult result;
  result.seed = seed;
  double best = kInf;
  int stall = 0;
  std::optional<Individual> champion;

  for (int gen = 1;; ++gen) {
    const auto leader = std::min_element(pop.begin(), pop.end(), fitter);
    if (!champion || leader->evaluation.fitness < best - kImprovementTolerance) {
      stall = 0;
    } else {
      ++stall;
    }
    if (!champion || leader->evaluation.fitness < champion->evaluation.fitness) {
      champion = *leader;
      best = leader->evaluation.fitness;
    }

    double sum = 0.0;
    std::size_t finite = 0;
    for (const Individual &ind : pop) {
      if (std::isfinite(ind.evaluation.fitness)) {
        sum += ind.evaluation.fitness;
        ++finite;
      }
    }
    result.history.push_back({best, finite > 0 ? sum / static_cast<double>(finite) : kInf});
    result.generations_run = gen;
    if ((gen >= ga.min_iterations && stall >= ga.stall_iterations) || gen >= ga.max_iterations) {
      break;
    }

    std::vector<double> fitness(size), weight(size);
    for (std::size_t i = 0; i < size; ++i) {
      fitness[i] = pop[i].evaluation.fitness;
      weight[i] = selection_weight(fitness[i]);
    }
    const double w_avg = std::accumulate(weight.begin(), weight.end(), 0.0) / static_cast<double>(size);
    const double w_max = *std::max_element(weight.begin(), weight.end());

    const std::vector<std::size_t> pool = selection(fitness, rng);
    std::vector<std::size_t> order(size - 1);
    std::iota(order.begin(), order.end(), std::size_t{1});
    std::shuffle(order.begin(), order.end(), rng);

    std::vector<Chromosome> next(size);
    next[0] = pop[pool[0]].chromosome;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t k = 0; k < order.size(); k += 2) {
      const std::size_t a = order[k];
      if (k + 1 == order.size()) {
        next[a] = pop[pool[a]].chromosome;
        break;
      }
      const std::size_t b = order[k + 1];
      const double pc = adaptive_pc(std::max(weight[pool[a]], weight[pool[b]]), w_avg, w_max, ga);
      if (unit(rng) < pc) {
        auto [c1, c2] = pmx_crossover(pop[pool[a]].chromosome, pop[pool[b]].chromosome, rng);
        next[a] = std::move(c1);
        next[b] = std::move(c2);
      } else {
        next[a] = pop[pool[a]].chromosome;
        next[b] = pop[pool[b]].chromosome;
      }
    }
    for (std::size_t i = 1; i < size; ++i) {
      if (unit(rng) < adaptive_pm(weight[pool[i]], w_avg, w_max, ga)) {
        next[i] = swap_mutation(next[i], rng);
      }
    }

    std::vector<Individual> offspring;
    offspring.reserve(size);
    offspring.push_back(pop[pool[0]]);
    for (std::size_t i = 1; i < size; ++i) {
      offspring.push_back(evaluate(next[i]));
    }
    pop = std::move(offspring);
    if (improve) {
      improve(pop, rng);
    }
  }

  result.best_plan = champion->plan;
  result.best_evaluation = champion->evaluation;
  return result;
}

Evaluator mixed_evaluator(const Scenario &scenario, const GaParams &ga) {
  return [&scenario, ga](const Chromosome &c) {
    Individual ind;
    ind.chromosome = c;
    ind.plan = planning::plan_from_sequences(
        scenario, planning::decode(c, scenario.target_count(), scenario.servicer_count()), ga.slack_rule);
    ind.evaluation = planning::evaluate_plan(scenario, ind.plan, ga.penalties);
    return ind;
  };
}

// Runs lns_improve on the elite_fraction best individuals.
ImproveHook lns_hook(const Scenario &scenario, const GaParams &ga, const LnsParams &lns,
                     const RelatednessModel &model) {
  return [&scenario, &model, ga, lns](std::vector<Individual> &pop, Rng &rng) {
    if (lns.lns_iterations == 0 || scenario.target_count() == 0) {
      return;
    }
    const auto count = std::clamp<std::size_t>(
        static_cast<std::size_t>(std::lround(lns.elite_fraction * static_cast<double>(pop.size()))), 1,
        pop.size());
    std::vector<std::size_t> idx(pop.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return fitter(pop[a], pop[b]); });
    for (std::size_t k = 0; k < count; ++k) {
      Individual &ind = pop[idx[k]];
      LnsOutcome out = lns_improve(ind.plan, ind.evaluation, lns, scenario, model, ga.penalties, rng, ga.slack_rule);
      if (out.evaluation.fitness < ind.evaluation.fitness) {
        ind.chromosome = planning::encode(out.plan, scenario.target_count());
        ind.plan = std::move(out.plan);
        ind.evaluation = std::move(out.evaluation);
      }
    }
  };
}

struct LambertLeg {
  planning::LegDetail detail;
  double cost = kInf;
};

// Cheapest leg from `from` to the target over grid flight times <= share.
LambertLeg best_lambert_leg(const astro::CartesianState &from, const planning::Target &target,
                            const std::vector<double> &grid, double share, const astro::PhysicalConstants &consts) {
  LambertLeg best;
  const double smallest = *std::min_element(grid.begin(), grid.end());
  for (double tof : grid) {
    if (tof > share && !(tof == smallest && share < smallest)) {
      continue;
    }
    const astro::CartesianState arrival = astro::orbit_to_state(target.orbit, from.t + tof, consts);
    astro::LambertSolution sol;
    try {
      sol = astro::lambert_solve(from.r, arrival.r, tof, true, consts);
    } catch (const Error &) {
      continue;
    }
    const Vector3 i1 = (sol.v1 - from.v) * 1000.0;
    const Vector3 i2 = (arrival.v - sol.v2) * 1000.0;
    const double cost = norm(i1) + norm(i2);
    if (cost < best.cost) {
      best.cost = cost;
      auto &rv = best.detail.rendezvous;
      rv = astro::RendezvousSolution{};
      rv.impulse1 = i1;
      rv.impulse2 = i2;
      rv.phasing_kick = i1;
      rv.t1 = from.t;
      rv.t2 = from.t + tof;
      rv.phase_time = tof;
      rv.total_time = tof;
      rv.total_dv = cost;
      rv.revolutions = 0;
      rv.alpha = angle_between(normalized(cross(from.r, from.v)), astro::angular_momentum_dir(target.orbit));
      best.detail.target_id = target.id;
      best.detail.arrival = from.t + tof;
      best.detail.departure = best.detail.arrival + target.repair_duration;
    }
  }
  return best;
}

} // namespace

SolveResult solve_lns_aga(const Scenario &scenario, const GaParams &ga, const LnsParams &lns, std::uint64_t seed) {
  lns.validate();
  const RelatednessModel model(scenario, lns.beta);
  return run_ga(scenario, ga, seed, mixed_evaluator(scenario, ga), lns_hook(scenario, ga, lns, model));
}

SolveResult solve_ga(const Scenario &scenario, const GaParams &ga, std::uint64_t seed) {
  return run_ga(scenario, ga, seed, mixed_evaluator(scenario, ga), nullptr);
}

std::vector<double> default_tof_grid(const astro::PhysicalConstants &consts) {
  std::vector<double> grid;
  for (int j = 1; j <= 24; ++j) {
    grid.push_back(consts.t_geo * j / 8.0);
  }
  return grid;
}

std::pair<MissionPlan, Evaluation> evaluate_lambert_plan(const Scenario &scenario,
                                                         const std::vector<std::vector<int>> &sequences,
                                                         const std::vector<double> &tof_grid,
                                                         const planning::PenaltyWeights &weights) {
  if (tof_grid.empty()) {
    throw std::invalid_argument("tof_grid must not be empty");
  }
  const auto &consts = scenario.constants;
  MissionPlan plan;
  Evaluation eval;
  for (std::size_t s = 0; s < sequences.size(); ++s) {
    const planning::Servicer &servicer = scenario.servicers[s];
    planning::Route route{servicer.id, sequences[s], {}, {}};
    std::vector<planning::LegDetail> legs;
    astro::CartesianState state = astro::orbit_to_state(servicer.orbit, 0.0, consts);
    double dv = 0.0, overrun = 0.0;

    double repairs_left = 0.0;
    for (int t : route.targets) {
      repairs_left += scenario.target(t).repair_duration;
    }
    for (std::size_t i = 0; i < route.targets.size(); ++i) {
      const planning::Target &target = scenario.target(route.targets[i]);
      const auto legs_left = static_cast<double>(route.targets.size() - i);
      const double share = (scenario.deadline - state.t - repairs_left) / legs_left;
      const LambertLeg leg = best_lambert_leg(state, target, tof_grid, share, consts);
      repairs_left -= target.repair_duration;
      if (!std::isfinite(leg.cost)) {
        dv = kInf;
        break;
      }
      dv += leg.cost;
      overrun += std::max(leg.detail.departure - scenario.deadline, 0.0);
      route.flight_times.push_back(leg.detail.rendezvous.total_time);
      legs.push_back(leg.detail);
      state = astro::orbit_to_state(target.orbit, leg.detail.departure, consts);
    }

    eval.per_servicer_dv.push_back(dv);
    eval.total_dv += dv;
    eval.deadline_penalty += overrun;
    eval.budget_penalty += std::max(dv - servicer.dv_budget, 0.0);
    eval.leg_details.push_back(std::move(legs));
    plan.routes.push_back(std::move(route));
  }
  eval.fitness = eval.total_dv + weights.phi / 60.0 * eval.deadline_penalty + weights.gamma * eval.budget_penalty;
  eval.feasible = eval.deadline_penalty == 0.0 && eval.budget_penalty == 0.0;
  return {std::move(plan), std::move(eval)};
}

SolveResult solve_lambert_ga(const Scenario &scenario, const GaParams &ga, std::uint64_t seed,
                             const std::vector<double> &tof_grid) {
  const Evaluator evaluate = [&scenario, &tof_grid, ga](const Chromosome &c) {
    Individual ind;
    ind.chromosome = c;
    auto [plan, eval] = evaluate_lambert_plan(
        scenario, planning::decode(c, scenario.target_count(), scenario.servicer_count()), tof_grid, ga.penalties);
    ind.plan = std::move(plan);
    ind.evaluation = std::move(eval);
    return ind;
  };
  return run_ga(scenario, ga, seed, evaluate, nullptr);
}

} // namespace geoplan::search
