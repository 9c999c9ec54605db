#pragma once

// Mission data model, chromosome decoding, route simulation and the penalty
// fitness used by every solver.

#include <chrono>
#include <cstddef>
#include <string>
#include <vector>

#include "geoplan/astro.hpp"
#include "geoplan/scenario_spec.hpp"

namespace geoplan::planning {

struct Target {
  int id = 0; // 1-based
  std::string name;
  astro::GeoOrbit orbit;
  double repair_duration = 0.0; // s
};

struct Servicer {
  int id = 0; // 1-based, also the route index + 1
  std::string name;
  astro::GeoOrbit orbit;
  double dv_budget = 0.0; // m/s
};

/// Immutable after construction; build it with scenarios::make_scenario.
struct Scenario {
  ScenarioSpec spec; // boundary form, kept for lossless serialization
  std::chrono::sys_seconds epoch{};
  double deadline = 0.0; // s since epoch
  std::vector<Servicer> servicers;
  std::vector<Target> targets;
  astro::PhysicalConstants constants;

  const Target &target(int id) const { return targets[static_cast<std::size_t>(id - 1)]; }
  std::size_t target_count() const { return targets.size(); }
  std::size_t servicer_count() const { return servicers.size(); }
};

struct Route {
  int servicer_id = 0;
  std::vector<int> targets;
  std::vector<int> revolutions; // one per leg, each >= 1
  std::vector<double> flight_times; // s per leg; Lambert legs only, else empty
};

struct MissionPlan {
  std::vector<Route> routes; // one per servicer, in servicer order
};

/// Permutation of 1..m+n-1. Values above m are split genes.
struct Chromosome {
  std::vector<int> genes;

  bool is_valid(std::size_t m, std::size_t n) const;
  friend bool operator==(const Chromosome &, const Chromosome &) = default;
};

struct PenaltyWeights {
  double phi = 1.0;    // fitness units per minute past the deadline
  double gamma = 10.0; // fitness units per m/s above the budget
};

/// Which leg receives leftover whole revolutions in the allocator.
enum class SlackRule { Largest, Smallest };

struct LegDetail {
  int target_id = 0;
  astro::RendezvousSolution rendezvous;
  double arrival = 0.0;   // s since epoch
  double departure = 0.0; // arrival + repair duration
};

struct RouteEvaluation {
  std::vector<LegDetail> legs;
  double dv = 0.0;              // m/s
  double completion = 0.0;      // end of the last repair, s since epoch
  double deadline_overrun = 0.0; // s, summed over repairs
};

struct Evaluation {
  std::vector<std::vector<LegDetail>> leg_details; // per servicer
  std::vector<double> per_servicer_dv;             // m/s
  double total_dv = 0.0;                           // m/s
  double deadline_penalty = 0.0;                   // s
  double budget_penalty = 0.0;                     // m/s
  double fitness = 0.0;
  bool feasible = false;
};

/// Splits a chromosome into one target sequence per servicer.
std::vector<std::vector<int>> decode(const Chromosome &chromosome, std::size_t m, std::size_t n);

/// Inverse of decode: routes joined by split genes m+1, m+2, ...
Chromosome encode(const MissionPlan &plan, std::size_t m);

/// Revolution counts for one servicer's target sequence: equal split of the
/// available whole periods, then leftover periods to one leg.
std::vector<int> allocate_revolutions(const Scenario &scenario, int servicer_id,
                                      const std::vector<int> &sequence,
                                      SlackRule rule = SlackRule::Largest);

/// Sequential rendezvous simulation of one route from the servicer's epoch
/// state. Legs use the route's revolution counts.
RouteEvaluation evaluate_route(const Scenario &scenario, const Route &route);

/// Penalty fitness contribution of a single evaluated route.
double route_fitness(const RouteEvaluation &eval, double dv_budget, const PenaltyWeights &weights);

Evaluation evaluate_plan(const Scenario &scenario, const MissionPlan &plan, const PenaltyWeights &weights);

/// Builds a full plan from per-servicer sequences, allocating revolutions.
MissionPlan plan_from_sequences(const Scenario &scenario, const std::vector<std::vector<int>> &sequences,
                                SlackRule rule = SlackRule::Largest);

/// Checks that the plan covers every target exactly once with valid legs.
bool is_complete(const Scenario &scenario, const MissionPlan &plan);

struct OracleResult {
  MissionPlan plan;
  Evaluation evaluation;
};

inline constexpr std::size_t kOracleMaxTargets = 5;
inline constexpr int kOracleMaxRevolutions = 6;

/// Brute force over assignments, orderings and revolution tuples in
/// [1, max_revolutions]. Throws InstanceTooLarge beyond 5 targets or 6
/// revolutions.
OracleResult exhaustive_solve(const Scenario &scenario, int max_revolutions, const PenaltyWeights &weights);

} // namespace geoplan::planning
