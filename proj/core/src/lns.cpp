#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "geoplan/errors.hpp"
#include "geoplan/search.hpp"

namespace geoplan::search {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using planning::PenaltyWeights;
using planning::Route;
using planning::SlackRule;

// Best slot for one target within one route.
struct RouteSlot {
  double feasible_delta = kInf;
  std::size_t feasible_pos = 0;
  double penalized_delta = kInf;
  std::size_t penalized_pos = 0;
};

double servicer_budget(const Scenario &scenario, const Route &route) {
  return scenario.servicers[static_cast<std::size_t>(route.servicer_id - 1)].dv_budget;
}

RouteSlot best_slot(int t, const Route &route, double base_fitness, const Scenario &scenario,
                    const PenaltyWeights &weights, SlackRule rule) {
  RouteSlot slot;
  const double budget = servicer_budget(scenario, route);
  Route trial{route.servicer_id, {}, {}, {}};
  for (std::size_t pos = 0; pos <= route.targets.size(); ++pos) {
    trial.targets = route.targets;
    trial.targets.insert(trial.targets.begin() + static_cast<std::ptrdiff_t>(pos), t);
    trial.revolutions = planning::allocate_revolutions(scenario, route.servicer_id, trial.targets, rule);
    const planning::RouteEvaluation eval = planning::evaluate_route(scenario, trial);
    const double delta = planning::route_fitness(eval, budget, weights) - base_fitness;
    if (delta < slot.penalized_delta) {
      slot.penalized_delta = delta;
      slot.penalized_pos = pos;
    }
    const bool feasible = eval.deadline_overrun == 0.0 && eval.dv <= budget;
    if (feasible && delta < slot.feasible_delta) {
      slot.feasible_delta = delta;
      slot.feasible_pos = pos;
    }
  }
  return slot;
}

double route_base_fitness(const Scenario &scenario, const Route &route, const PenaltyWeights &weights) {
  return planning::route_fitness(planning::evaluate_route(scenario, route), servicer_budget(scenario, route),
                                 weights);
}

void insert_into(MissionPlan &plan, std::size_t r, std::size_t pos, int t, const Scenario &scenario,
                 SlackRule rule) {
  Route &route = plan.routes[r];
  route.targets.insert(route.targets.begin() + static_cast<std::ptrdiff_t>(pos), t);
  route.revolutions = planning::allocate_revolutions(scenario, route.servicer_id, route.targets, rule);
}

} // namespace

void LnsParams::validate() const {
  if (!(remove_rate > 0.0 && remove_rate < 1.0)) {
    throw std::invalid_argument("remove_rate must be in (0, 1)");
  }
  if (!(determinism_p >= 1.0)) {
    throw std::invalid_argument("determinism_p must be >= 1");
  }
  if (!(beta > 0.0 && beta < 1.0)) {
    throw std::invalid_argument("beta must be in (0, 1)");
  }
  if (lns_iterations < 0) {
    throw std::invalid_argument("lns_iterations must be >= 0");
  }
  if (!(elite_fraction >= 0.0 && elite_fraction <= 1.0)) {
    throw std::invalid_argument("elite_fraction must be in [0, 1]");
  }
}

RelatednessModel::RelatednessModel(const Scenario &scenario, double beta)
    : m_(scenario.target_count()), cost_(m_ * m_, 0.0) {
  double max_cost = 0.0;
  for (std::size_t i = 0; i < m_; ++i) {
    for (std::size_t j = 0; j < m_; ++j) {
      if (i == j) {
        continue;
      }
      const auto &a = scenario.targets[i].orbit;
      const auto &b = scenario.targets[j].orbit;
      const double alpha = astro::dihedral_angle(a, b);
      const double theta = std::abs(astro::phase_angle(a, b, 0.0, scenario.constants));
      cost_[i * m_ + j] = beta * alpha + (1.0 - beta) * theta;
      max_cost = std::max(max_cost, cost_[i * m_ + j]);
    }
  }
  if (max_cost > 0.0) {
    for (double &c : cost_) {
      c /= max_cost;
    }
  }
}

double RelatednessModel::normalized_cost(int i, int j) const {
  return cost_[static_cast<std::size_t>(i - 1) * m_ + static_cast<std::size_t>(j - 1)];
}

double RelatednessModel::relatedness(int i, int j, const MissionPlan &plan, bool adjacency) const {
  double v = 1.0;
  for (const Route &route : plan.routes) {
    const auto it_i = std::find(route.targets.begin(), route.targets.end(), i);
    const auto it_j = std::find(route.targets.begin(), route.targets.end(), j);
    if (it_i == route.targets.end() || it_j == route.targets.end()) {
      continue;
    }
    if (!adjacency || std::abs(it_i - it_j) == 1) {
      v = 0.0;
    }
  }
  return 1.0 / (normalized_cost(i, j) + v + 1e-6);
}

DestroyResult destroy(const MissionPlan &plan, const LnsParams &params, const Scenario &scenario,
                      const RelatednessModel &model, Rng &rng, SlackRule rule) {
  std::vector<int> remaining;
  for (const Route &route : plan.routes) {
    remaining.insert(remaining.end(), route.targets.begin(), route.targets.end());
  }
  std::sort(remaining.begin(), remaining.end());

  DestroyResult out;
  if (remaining.empty()) {
    out.partial = plan;
    return out;
  }
  const auto goal = static_cast<std::size_t>(std::clamp(
      std::ceil(static_cast<double>(remaining.size()) * params.remove_rate - 1e-9), 1.0,
      static_cast<double>(remaining.size())));

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::size_t first = std::uniform_int_distribution<std::size_t>(0, remaining.size() - 1)(rng);
  int last = remaining[first];
  remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(first));
  out.removed.push_back(last);

  while (out.removed.size() < goal) {
    std::vector<std::pair<double, int>> ranked;
    ranked.reserve(remaining.size());
    for (int t : remaining) {
      ranked.emplace_back(model.relatedness(last, t, plan, params.adjacency_relatedness), t);
    }
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto &x, const auto &y) { return x.first > y.first; });
    const double y = unit(rng);
    auto idx = static_cast<std::size_t>(std::floor(std::pow(y, params.determinism_p) *
                                                   static_cast<double>(ranked.size())));
    idx = std::min(idx, ranked.size() - 1);
    last = ranked[idx].second;
    remaining.erase(std::find(remaining.begin(), remaining.end(), last));
    out.removed.push_back(last);
  }

  out.partial = plan;
  for (Route &route : out.partial.routes) {
    const auto gone = [&](int t) {
      return std::find(out.removed.begin(), out.removed.end(), t) != out.removed.end();
    };
    const std::size_t before = route.targets.size();
    route.targets.erase(std::remove_if(route.targets.begin(), route.targets.end(), gone), route.targets.end());
    if (route.targets.size() != before) {
      route.revolutions = planning::allocate_revolutions(scenario, route.servicer_id, route.targets, rule);
    }
  }
  return out;
}

InsertionCost insertion_cost(int t, const MissionPlan &partial, const Scenario &scenario,
                             const PenaltyWeights &weights, SlackRule rule) {
  InsertionCost best{kInf, 0, 0};
  for (std::size_t r = 0; r < partial.routes.size(); ++r) {
    const Route &route = partial.routes[r];
    const RouteSlot slot = best_slot(t, route, route_base_fitness(scenario, route, weights), scenario, weights, rule);
    if (slot.feasible_delta < best.cost) {
      best = InsertionCost{slot.feasible_delta, r, slot.feasible_pos};
    }
  }
  if (best.cost == kInf) {
    throw AllInfeasible("no feasible insertion position for target " + std::to_string(t));
  }
  return best;
}

MissionPlan repair(const std::vector<int> &removed, const MissionPlan &partial, const Scenario &scenario,
                   const PenaltyWeights &weights, SlackRule rule) {
  MissionPlan plan = partial;
  std::vector<int> pending = removed;
  const std::size_t routes = plan.routes.size();

  std::vector<double> base(routes);
  for (std::size_t r = 0; r < routes; ++r) {
    base[r] = route_base_fitness(scenario, plan.routes[r], weights);
  }
  // slots[i][r]: best slot of pending[i] in route r. Only the route that
  // receives a target needs recomputing afterwards.
  std::vector<std::vector<RouteSlot>> slots(pending.size(), std::vector<RouteSlot>(routes));
  for (std::size_t i = 0; i < pending.size(); ++i) {
    for (std::size_t r = 0; r < routes; ++r) {
      slots[i][r] = best_slot(pending[i], plan.routes[r], base[r], scenario, weights, rule);
    }
  }

  while (!pending.empty()) {
    // Hardest target first: largest cheapest-feasible cost, with targets that
    // have no feasible slot ranked above all others.
    std::size_t pick = 0;
    double pick_cost = -kInf, pick_penalized = -kInf;
    for (std::size_t i = 0; i < pending.size(); ++i) {
      double cost = kInf, penalized = kInf;
      for (const RouteSlot &s : slots[i]) {
        cost = std::min(cost, s.feasible_delta);
        penalized = std::min(penalized, s.penalized_delta);
      }
      if (cost > pick_cost || (cost == kInf && pick_cost == kInf && penalized > pick_penalized)) {
        pick = i;
        pick_cost = cost;
        pick_penalized = penalized;
      }
    }

    std::size_t route = 0, pos = 0;
    double best = kInf;
    for (std::size_t r = 0; r < routes; ++r) {
      const RouteSlot &s = slots[pick][r];
      const double value = pick_cost < kInf ? s.feasible_delta : s.penalized_delta;
      if (value < best) {
        best = value;
        route = r;
        pos = pick_cost < kInf ? s.feasible_pos : s.penalized_pos;
      }
    }
    insert_into(plan, route, pos, pending[pick], scenario, rule);
    pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(pick));
    slots.erase(slots.begin() + static_cast<std::ptrdiff_t>(pick));

    base[route] = route_base_fitness(scenario, plan.routes[route], weights);
    for (std::size_t i = 0; i < pending.size(); ++i) {
      slots[i][route] = best_slot(pending[i], plan.routes[route], base[route], scenario, weights, rule);
    }
  }
  return plan;
}

LnsOutcome lns_improve(const MissionPlan &plan, const Evaluation &evaluation, const LnsParams &params,
                       const Scenario &scenario, const RelatednessModel &model, const PenaltyWeights &weights,
                       Rng &rng, SlackRule rule) {
  LnsOutcome best{plan, evaluation};
  for (int iter = 0; iter < params.lns_iterations; ++iter) {
    DestroyResult destroyed = destroy(best.plan, params, scenario, model, rng, rule);
    MissionPlan candidate = repair(destroyed.removed, destroyed.partial, scenario, weights, rule);
    Evaluation eval = planning::evaluate_plan(scenario, candidate, weights);
    if (eval.fitness < best.evaluation.fitness) {
      best = LnsOutcome{std::move(candidate), std::move(eval)};
      break;
    }
  }
  return best;
}

} // namespace geoplan::search
