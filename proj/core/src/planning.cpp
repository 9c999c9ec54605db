#include "geoplan/planning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "geoplan/errors.hpp"

namespace geoplan::planning {

bool Chromosome::is_valid(std::size_t m, std::size_t n) const {
  const std::size_t len = m + n - 1;
  if (genes.size() != len) {
    return false;
  }
  std::vector<bool> seen(len + 1, false);
  for (int g : genes) {
    if (g < 1 || static_cast<std::size_t>(g) > len || seen[static_cast<std::size_t>(g)]) {
      return false;
    }
    seen[static_cast<std::size_t>(g)] = true;
  }
  return true;
}

std::vector<std::vector<int>> decode(const Chromosome &chromosome, std::size_t m, std::size_t n) {
  std::vector<std::vector<int>> sequences(n);
  std::size_t current = 0;
  for (int g : chromosome.genes) {
    if (static_cast<std::size_t>(g) > m) {
      ++current;
    } else {
      sequences[current].push_back(g);
    }
  }
  return sequences;
}

Chromosome encode(const MissionPlan &plan, std::size_t m) {
  Chromosome c;
  for (std::size_t r = 0; r < plan.routes.size(); ++r) {
    const auto &targets = plan.routes[r].targets;
    c.genes.insert(c.genes.end(), targets.begin(), targets.end());
    if (r + 1 < plan.routes.size()) {
      c.genes.push_back(static_cast<int>(m + 1 + r));
    }
  }
  return c;
}

RouteEvaluation evaluate_route(const Scenario &scenario, const Route &route) {
  if (route.targets.size() != route.revolutions.size()) {
    throw std::invalid_argument("route has " + std::to_string(route.targets.size()) + " targets but " +
                                std::to_string(route.revolutions.size()) + " revolution counts");
  }
  const auto &consts = scenario.constants;
  const Servicer &servicer = scenario.servicers[static_cast<std::size_t>(route.servicer_id - 1)];

  RouteEvaluation out;
  out.legs.reserve(route.targets.size());
  astro::CartesianState state = astro::orbit_to_state(servicer.orbit, 0.0, consts);
  for (std::size_t i = 0; i < route.targets.size(); ++i) {
    const Target &target = scenario.target(route.targets[i]);
    LegDetail leg;
    leg.target_id = target.id;
    leg.rendezvous = astro::rendezvous_mixed(state, target.orbit, route.revolutions[i], consts);
    leg.arrival = state.t + leg.rendezvous.total_time;
    leg.departure = leg.arrival + target.repair_duration;
    out.dv += leg.rendezvous.total_dv;
    out.deadline_overrun += std::max(leg.departure - scenario.deadline, 0.0);
    out.completion = leg.departure;
    // After rendezvous the servicer co-orbits with the target.
    state = astro::orbit_to_state(target.orbit, leg.departure, consts);
    out.legs.push_back(leg);
  }
  return out;
}

std::vector<int> allocate_revolutions(const Scenario &scenario, int servicer_id, const std::vector<int> &sequence,
                                      SlackRule rule) {
  if (sequence.empty()) {
    return {};
  }
  const double t_geo = scenario.constants.t_geo;
  const auto legs = static_cast<double>(sequence.size());

  // Coast times and phase angles do not depend on the revolution counts:
  // extra revolutions shift every later event by whole periods.
  Route probe{servicer_id, sequence, std::vector<int>(sequence.size(), 1), {}};
  const RouteEvaluation geometry = evaluate_route(scenario, probe);

  // Phasing time left after repairs and coasts, less the fractional part of
  // each leg's phasing time so that the equal split never overruns.
  double fixed = 0.0;
  for (const LegDetail &leg : geometry.legs) {
    fixed += scenario.target(leg.target_id).repair_duration + leg.rendezvous.coast_time +
             leg.rendezvous.theta / astro::kTwoPi * t_geo;
  }
  const double available_periods = std::floor((scenario.deadline - fixed) / t_geo);
  const int each = static_cast<int>(std::max(std::floor(available_periods / legs), 1.0));

  probe.revolutions.assign(sequence.size(), each);
  const double end = each == 1 ? geometry.completion : evaluate_route(scenario, probe).completion;
  if (end < scenario.deadline) {
    const int spare = static_cast<int>(std::floor((scenario.deadline - end) / t_geo));
    if (spare > 0) {
      std::size_t pick = 0;
      for (std::size_t i = 1; i < geometry.legs.size(); ++i) {
        const double cand = std::abs(geometry.legs[i].rendezvous.theta);
        const double best = std::abs(geometry.legs[pick].rendezvous.theta);
        if (rule == SlackRule::Largest ? cand > best : cand < best) {
          pick = i;
        }
      }
      probe.revolutions[pick] += spare;
    }
  }
  return probe.revolutions;
}

double route_fitness(const RouteEvaluation &eval, double dv_budget, const PenaltyWeights &weights) {
  return eval.dv + weights.phi / 60.0 * eval.deadline_overrun + weights.gamma * std::max(eval.dv - dv_budget, 0.0);
}

Evaluation evaluate_plan(const Scenario &scenario, const MissionPlan &plan, const PenaltyWeights &weights) {
  Evaluation out;
  out.leg_details.reserve(plan.routes.size());
  out.per_servicer_dv.reserve(plan.routes.size());
  for (const Route &route : plan.routes) {
    RouteEvaluation re = evaluate_route(scenario, route);
    const double budget = scenario.servicers[static_cast<std::size_t>(route.servicer_id - 1)].dv_budget;
    out.per_servicer_dv.push_back(re.dv);
    out.total_dv += re.dv;
    out.deadline_penalty += re.deadline_overrun;
    out.budget_penalty += std::max(re.dv - budget, 0.0);
    out.leg_details.push_back(std::move(re.legs));
  }
  out.fitness = out.total_dv + weights.phi / 60.0 * out.deadline_penalty + weights.gamma * out.budget_penalty;
  out.feasible = out.deadline_penalty == 0.0 && out.budget_penalty == 0.0;
  return out;
}

MissionPlan plan_from_sequences(const Scenario &scenario, const std::vector<std::vector<int>> &sequences,
                                SlackRule rule) {
  MissionPlan plan;
  plan.routes.reserve(sequences.size());
  for (std::size_t s = 0; s < sequences.size(); ++s) {
    const int id = static_cast<int>(s + 1);
    plan.routes.push_back(Route{id, sequences[s], allocate_revolutions(scenario, id, sequences[s], rule), {}});
  }
  return plan;
}

bool is_complete(const Scenario &scenario, const MissionPlan &plan) {
  if (plan.routes.size() != scenario.servicer_count()) {
    return false;
  }
  std::vector<int> seen(scenario.target_count() + 1, 0);
  for (std::size_t r = 0; r < plan.routes.size(); ++r) {
    const Route &route = plan.routes[r];
    const bool lambert = route.revolutions.empty() && !route.flight_times.empty();
    const std::size_t legs = lambert ? route.flight_times.size() : route.revolutions.size();
    if (route.servicer_id != static_cast<int>(r + 1) || route.targets.size() != legs) {
      return false;
    }
    for (std::size_t i = 0; i < route.targets.size(); ++i) {
      const int t = route.targets[i];
      const bool leg_ok = lambert ? route.flight_times[i] > 0.0 : route.revolutions[i] >= 1;
      if (t < 1 || static_cast<std::size_t>(t) > scenario.target_count() || !leg_ok ||
          seen[static_cast<std::size_t>(t)]++ > 0) {
        return false;
      }
    }
  }
  return std::all_of(seen.begin() + 1, seen.end(), [](int c) { return c == 1; });
}

OracleResult exhaustive_solve(const Scenario &scenario, int max_revolutions, const PenaltyWeights &weights) {
  const std::size_t m = scenario.target_count();
  const std::size_t n = scenario.servicer_count();
  if (m > kOracleMaxTargets || max_revolutions > kOracleMaxRevolutions) {
    throw InstanceTooLarge("exhaustive search is limited to " + std::to_string(kOracleMaxTargets) +
                           " targets and " + std::to_string(kOracleMaxRevolutions) + " revolutions (got " +
                           std::to_string(m) + " targets, " + std::to_string(max_revolutions) + " revolutions)");
  }
  if (max_revolutions < 1) {
    throw InvalidRevolutions("max_revolutions must be >= 1");
  }

  constexpr double kInf = std::numeric_limits<double>::infinity();
  const std::size_t subsets = std::size_t{1} << m;

  // Best route per (servicer, subset) over every ordering and revolution tuple.
  std::vector<std::vector<double>> best_fit(n, std::vector<double>(subsets, kInf));
  std::vector<std::vector<Route>> best_route(n, std::vector<Route>(subsets));
  for (std::size_t s = 0; s < n; ++s) {
    const int sid = static_cast<int>(s + 1);
    const double budget = scenario.servicers[s].dv_budget;
    for (std::size_t mask = 0; mask < subsets; ++mask) {
      std::vector<int> order;
      for (std::size_t t = 0; t < m; ++t) {
        if (mask & (std::size_t{1} << t)) {
          order.push_back(static_cast<int>(t + 1));
        }
      }
      if (order.empty()) {
        best_fit[s][mask] = 0.0;
        best_route[s][mask] = Route{sid, {}, {}, {}};
        continue;
      }
      do {
        Route route{sid, order, std::vector<int>(order.size(), 1), {}};
        while (true) {
          const double fit = route_fitness(evaluate_route(scenario, route), budget, weights);
          if (fit < best_fit[s][mask]) {
            best_fit[s][mask] = fit;
            best_route[s][mask] = route;
          }
          std::size_t digit = 0;
          while (digit < route.revolutions.size() && route.revolutions[digit] == max_revolutions) {
            route.revolutions[digit++] = 1;
          }
          if (digit == route.revolutions.size()) {
            break;
          }
          ++route.revolutions[digit];
        }
      } while (std::next_permutation(order.begin(), order.end()));
    }
  }

  // Every assignment of targets to servicers.
  std::vector<std::size_t> owner(m, 0);
  double best_total = kInf;
  std::vector<std::size_t> best_masks(n, 0);
  while (true) {
    std::vector<std::size_t> masks(n, 0);
    for (std::size_t t = 0; t < m; ++t) {
      masks[owner[t]] |= std::size_t{1} << t;
    }
    double total = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
      total += best_fit[s][masks[s]];
    }
    if (total < best_total) {
      best_total = total;
      best_masks = masks;
    }
    std::size_t digit = 0;
    while (digit < m && owner[digit] == n - 1) {
      owner[digit++] = 0;
    }
    if (digit == m) {
      break;
    }
    ++owner[digit];
  }

  OracleResult result;
  for (std::size_t s = 0; s < n; ++s) {
    result.plan.routes.push_back(best_route[s][best_masks[s]]);
  }
  result.evaluation = evaluate_plan(scenario, result.plan, weights);
  return result;
}

} // namespace geoplan::planning
