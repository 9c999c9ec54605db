// Acceptance suite: one PASS/FAIL line per criterion. Pass criterion numbers
// as arguments to run a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "geoplan/astro.hpp"
#include "geoplan/scenarios.hpp"
#include "geoplan/search.hpp"
#include "test_support.hpp"

using namespace geoplan;
using namespace geoplan::search;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char *f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Every solver history seen by the suite, checked by the operator criterion.
std::vector<std::vector<GenerationStats>> g_histories;

SolveResult logged(SolveResult r) {
  g_histories.push_back(r.history);
  return r;
}

struct TimedRun {
  SolveResult result;
  double seconds = 0.0;
};

// Case-study runs shared by criteria 1-3.
const std::vector<TimedRun> &case_study_runs(bool lns) {
  static std::vector<TimedRun> lns_runs, ga_runs;
  auto &runs = lns ? lns_runs : ga_runs;
  if (runs.empty()) {
    const Scenario sc = scenarios::case_study();
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const auto t0 = std::chrono::steady_clock::now();
      SolveResult r = lns ? solve_lns_aga(sc, GaParams{}, LnsParams{}, seed) : solve_ga(sc, GaParams{}, seed);
      runs.push_back({logged(std::move(r)), seconds_since(t0)});
    }
  }
  return runs;
}

const TimedRun &best_case_study_run() {
  const auto &runs = case_study_runs(true);
  return *std::min_element(runs.begin(), runs.end(), [](const TimedRun &a, const TimedRun &b) {
    return a.result.best_evaluation.fitness < b.result.best_evaluation.fitness;
  });
}

Verdict case_study_quality() {
  const auto &runs = case_study_runs(true);
  const TimedRun &best = best_case_study_run();
  double slowest = 0.0;
  for (const auto &r : runs) {
    slowest = std::max(slowest, r.seconds);
  }
  const auto &ev = best.result.best_evaluation;
  return {ev.feasible && ev.total_dv <= 2100.0,
          fmt("best of 20 seeds: seed %llu, total dv %.2f m/s, %s (limit 2100); slowest run %.1f s",
              static_cast<unsigned long long>(best.result.seed), ev.total_dv, ev.feasible ? "feasible" : "infeasible",
              slowest)};
}

Verdict budget_at_optimum() {
  const Scenario sc = scenarios::case_study();
  const TimedRun &best = best_case_study_run();
  const auto &ev = best.result.best_evaluation;
  bool ok = ev.per_servicer_dv.size() == sc.servicers.size();
  std::string per;
  for (std::size_t s = 0; s < ev.per_servicer_dv.size(); ++s) {
    ok = ok && ev.per_servicer_dv[s] <= sc.servicers[s].dv_budget;
    per += fmt("%s %.2f m/s, ", sc.servicers[s].name.c_str(), ev.per_servicer_dv[s]);
  }
  double last = 0.0;
  for (const auto &legs : ev.leg_details) {
    for (const auto &leg : legs) {
      last = std::max(last, leg.departure);
    }
  }
  ok = ok && last <= sc.deadline && ev.deadline_penalty == 0.0;
  return {ok, per + fmt("last repair ends %s (deadline %s)", scenarios::format_iso(sc.epoch, last).c_str(),
                        scenarios::format_iso(sc.epoch, sc.deadline).c_str())};
}

Verdict lns_dominates_ga() {
  std::vector<double> lns, ga;
  int lns_feasible = 0, ga_feasible = 0;
  for (const auto &r : case_study_runs(true)) {
    lns.push_back(r.result.best_evaluation.fitness);
    lns_feasible += r.result.best_evaluation.feasible;
  }
  for (const auto &r : case_study_runs(false)) {
    ga.push_back(r.result.best_evaluation.fitness);
    ga_feasible += r.result.best_evaluation.feasible;
  }
  const double ml = median(lns), mg = median(ga);
  return {ml < mg && lns_feasible >= ga_feasible,
          fmt("median fitness LNS-AGA %.2f vs GA %.2f; feasible %d/20 vs %d/20", ml, mg, lns_feasible, ga_feasible)};
}

constexpr int kRandomRuns = 20;

Verdict mixed_beats_lambert() {
  bool ok = true;
  std::string detail;
  for (std::uint64_t s = 1; s <= 5; ++s) {
    const Scenario sc = scenarios::random_scenario(10, 2, 15, s);
    const auto grid = default_tof_grid(sc.constants);
    double lns = std::numeric_limits<double>::infinity(), lam = lns, lns_dv = lns, lam_dv = lns;
    for (std::uint64_t seed = 1; seed <= kRandomRuns; ++seed) {
      const SolveResult a = logged(solve_lns_aga(sc, GaParams{}, LnsParams{}, seed));
      const SolveResult b = logged(solve_lambert_ga(sc, GaParams{}, seed, grid));
      lns = std::min(lns, a.best_evaluation.fitness);
      lam = std::min(lam, b.best_evaluation.fitness);
      lns_dv = std::min(lns_dv, a.best_evaluation.total_dv);
      lam_dv = std::min(lam_dv, b.best_evaluation.total_dv);
    }
    ok = ok && lns < lam;
    detail += fmt("s%llu %.0f vs %.0f (raw %.0f vs %.0f); ", static_cast<unsigned long long>(s), lns, lam, lns_dv,
                  lam_dv);
  }
  return {ok, "min cost LNS-AGA vs Lambert-GA over 20 runs: " + detail};
}

Verdict ten_day_infeasibility() {
  int mixed_runs = 0, mixed_feasible = 0, lambert_runs = 0, lambert_time_ok = 0;
  for (std::uint64_t s = 1; s <= 5; ++s) {
    const Scenario sc = scenarios::random_scenario(10, 2, 10, s);
    const auto grid = default_tof_grid(sc.constants);
    for (std::uint64_t seed = 1; seed <= kRandomRuns; ++seed) {
      for (const SolveResult &r :
           {logged(solve_lns_aga(sc, GaParams{}, LnsParams{}, seed)), logged(solve_ga(sc, GaParams{}, seed))}) {
        ++mixed_runs;
        mixed_feasible += r.best_evaluation.feasible;
      }
      const SolveResult l = logged(solve_lambert_ga(sc, GaParams{}, seed, grid));
      ++lambert_runs;
      lambert_time_ok += l.best_evaluation.deadline_penalty == 0.0;
    }
  }
  return {mixed_feasible == 0 && lambert_time_ok == lambert_runs,
          fmt("mixed-strategy feasible %d/%d; Lambert-GA time-feasible %d/%d", mixed_feasible, mixed_runs,
              lambert_time_ok, lambert_runs)};
}

astro::GeoOrbit random_orbit(std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> inc(0.0, 10.0), ang(0.0, 360.0);
  return astro::GeoOrbit::make(inc(rng) * astro::kDeg, ang(rng) * astro::kDeg, ang(rng) * astro::kDeg);
}

Verdict phasing_closure() {
  const auto c = astro::PhysicalConstants::standard();
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> revs(1, 10);
  std::uniform_real_distribution<double> start(0.0, 30 * 86400.0);
  double worst_r = 0.0, worst_v = 0.0;
  for (int n = 0; n < 1000; ++n) {
    const astro::CartesianState s = astro::orbit_to_state(random_orbit(rng), start(rng), c);
    const astro::GeoOrbit target = random_orbit(rng);
    const auto sol = astro::rendezvous_mixed(s, target, revs(rng), c);
    astro::CartesianState x = astro::propagate(s, sol.coast_time, c);
    x.v = x.v + sol.impulse1 / 1000.0;
    x = astro::propagate(x, sol.phase_time, c);
    x.v = x.v + sol.impulse2 / 1000.0;
    const astro::CartesianState goal = astro::orbit_to_state(target, sol.t2, c);
    worst_r = std::max(worst_r, norm(x.r - goal.r));
    worst_v = std::max(worst_v, norm(x.v - goal.v));
  }
  return {worst_r < 1e-6 && worst_v < 1e-9,
          fmt("1000 triples: worst miss %.3g km, %.3g km/s (limits 1e-6, 1e-9)", worst_r, worst_v)};
}

Verdict oracle_equivalence() {
  int matched = 0;
  std::string misses;
  for (int i = 1; i <= 20; ++i) {
    const int m = 2 + i % 3, n = 1 + i % 2;
    const Scenario sc = testing::small_instance(static_cast<std::uint64_t>(1000 + i), m, n);
    const double optimum = planning::exhaustive_solve(sc, 4, {}).evaluation.fitness;
    double best = std::numeric_limits<double>::infinity();
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      best = std::min(best, logged(solve_lns_aga(sc, GaParams{}, LnsParams{}, seed)).best_evaluation.fitness);
    }
    if (std::abs(best - optimum) <= 1e-6 * std::max(1.0, std::abs(optimum))) {
      ++matched;
    } else {
      misses += fmt(" #%d(%.1f vs %.1f)", i, best, optimum);
    }
  }
  return {matched >= 19, fmt("%d/20 instances match the exhaustive optimum (need 19)", matched) +
                             (misses.empty() ? "" : "; misses:" + misses)};
}

Verdict operator_properties() {
  Rng rng(8);
  long bad = 0;
  for (int n = 0; n < 100000; ++n) {
    const std::size_t m = 2 + n % 20, s = 1 + n % 5;
    const auto parents = init_population(m, s, 2, rng);
    const auto [c1, c2] = pmx_crossover(parents[0], parents[1], rng);
    bad += !c1.is_valid(m, s) || !c2.is_valid(m, s);
    bad += !swap_mutation(c1, rng).is_valid(m, s);
  }

  const Scenario sc = scenarios::random_scenario(10, 2, 15, 8);
  const RelatednessModel model(sc, 0.5);
  std::uniform_real_distribution<double> q(0.01, 0.99);
  for (int n = 0; n < 100000; ++n) {
    const Chromosome c = init_population(10, 2, 1, rng)[0];
    const auto plan = planning::plan_from_sequences(sc, planning::decode(c, 10, 2));
    LnsParams p;
    p.remove_rate = q(rng);
    const DestroyResult d = destroy(plan, p, sc, model, rng);
    std::set<int> left;
    for (const auto &r : d.partial.routes) {
      left.insert(r.targets.begin(), r.targets.end());
    }
    const std::set<int> removed(d.removed.begin(), d.removed.end());
    bad += d.removed.size() != static_cast<std::size_t>(std::ceil(10 * p.remove_rate - 1e-9)) ||
           removed.size() != d.removed.size() || left.size() + removed.size() != 10;
  }

  const GaParams gp;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int n = 0; n < 100000; ++n) {
    const double avg = u(rng), max = avg + u(rng), w = max * u(rng);
    const double pc = adaptive_pc(w, avg, max, gp), pm = adaptive_pm(w, avg, max, gp);
    bad += pc < gp.pc_lo || pc > gp.pc_hi || pm < gp.pm_lo || pm > gp.pm_hi;
  }

  if (g_histories.empty()) {
    const Scenario small = scenarios::random_scenario(6, 2, 15, 3);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      logged(solve_lns_aga(small, GaParams{}, LnsParams{}, seed));
      logged(solve_ga(small, GaParams{}, seed));
    }
  }
  long rising = 0;
  for (const auto &h : g_histories) {
    for (std::size_t g = 1; g < h.size(); ++g) {
      rising += h[g].best > h[g - 1].best;
    }
  }
  return {bad == 0 && rising == 0,
          fmt("%ld operator violations in 3e5 applications; %ld best-fitness increases over %zu logged runs", bad,
              rising, g_histories.size())};
}

Verdict monotone_phasing() {
  const auto c = astro::PhysicalConstants::standard();
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> theta(-astro::kPi, astro::kPi);
  int violations = 0;
  for (int n = 0; n < 100; ++n) {
    double th = 0.0;
    while (th == 0.0) {
      th = theta(rng);
    }
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 10; ++k) {
      const double dv = astro::phasing_solution(th, k, c).dv;
      violations += !(dv < prev);
      prev = dv;
    }
  }
  return {violations == 0, fmt("100 phase angles x k=1..10: %d non-decreasing steps", violations)};
}

Verdict combined_impulse() {
  const auto c = astro::PhysicalConstants::standard();
  std::mt19937_64 rng(10);
  std::uniform_int_distribution<int> revs(1, 10);
  int triangle = 0;
  double worst = 0.0;
  for (int n = 0; n < 1000; ++n) {
    const auto s = astro::orbit_to_state(random_orbit(rng), 0.0, c);
    const auto sol = astro::rendezvous_mixed(s, random_orbit(rng), revs(rng), c);
    const double a = norm(sol.plane_change), b = norm(sol.phasing_kick);
    const double combined = norm(sol.impulse1);
    triangle += combined > a + b + 1e-9 * (a + b);
    const double cos_psi = a > 0.0 && b > 0.0 ? dot(sol.plane_change, sol.phasing_kick) / (a * b) : 0.0;
    const double closed = std::sqrt(std::max(a * a + b * b + 2.0 * a * b * cos_psi, 0.0));
    const double expected_total = closed + norm(sol.impulse2);
    worst = std::max(worst, std::abs(combined - closed) / std::max(closed, 1e-300));
    worst = std::max(worst, std::abs(sol.total_dv - expected_total) / std::max(expected_total, 1e-300));
  }
  return {triangle == 0 && worst <= 1e-9,
          fmt("1000 legs: %d triangle violations, worst relative closed-form error %.3g", triangle, worst)};
}

} // namespace

int main(int argc, char **argv) {
  const std::vector<std::pair<const char *, std::function<Verdict()>>> criteria = {
      {"case-study quality", case_study_quality},
      {"budget satisfaction at the optimum", budget_at_optimum},
      {"LNS-AGA dominates GA", lns_dominates_ga},
      {"mixed strategy beats Lambert", mixed_beats_lambert},
      {"10-day infeasibility", ten_day_infeasibility},
      {"phasing closure oracle", phasing_closure},
      {"oracle equivalence", oracle_equivalence},
      {"operator property suite", operator_properties},
      {"monotone phasing cost", monotone_phasing},
      {"combined-impulse inequality", combined_impulse},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) {
    only.insert(std::atoi(argv[i]));
  }
  // Property checks over logged histories run last so they see every run.
  std::vector<int> order{1, 2, 3, 4, 5, 6, 7, 9, 10, 8};
  int failed = 0;
  for (int id : order) {
    if (!only.empty() && !only.count(id)) {
      continue;
    }
    const auto t0 = std::chrono::steady_clock::now();
    const Verdict v = criteria[static_cast<std::size_t>(id - 1)].second();
    failed += !v.pass;
    std::printf("%s %2d %s: %s [%.1f s]\n", v.pass ? "PASS" : "FAIL", id, criteria[static_cast<std::size_t>(id - 1)].first,
                v.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
