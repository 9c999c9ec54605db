#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "geoplan/search.hpp"

namespace geoplan::search {

void GaParams::validate() const {
  if (population_size < 2) {
    throw std::invalid_argument("population_size must be >= 2");
  }
  if (!(pc_lo > 0.0 && pc_lo <= pc_hi && pc_hi <= 1.0)) {
    throw std::invalid_argument("crossover bounds must satisfy 0 < pc_lo <= pc_hi <= 1");
  }
  if (!(pm_lo > 0.0 && pm_lo <= pm_hi && pm_hi <= 1.0)) {
    throw std::invalid_argument("mutation bounds must satisfy 0 < pm_lo <= pm_hi <= 1");
  }
  if (min_iterations < 1 || stall_iterations < 1 || max_iterations < min_iterations) {
    throw std::invalid_argument("iteration limits must satisfy 1 <= min_iterations <= max_iterations");
  }
  if (!(penalties.phi > 0.0) || !(penalties.gamma > 0.0)) {
    throw std::invalid_argument("penalty weights must be positive");
  }
}

std::vector<Chromosome> init_population(std::size_t m, std::size_t n, std::size_t size, Rng &rng) {
  std::vector<Chromosome> pop(size);
  for (auto &c : pop) {
    c.genes.resize(m + n - 1);
    std::iota(c.genes.begin(), c.genes.end(), 1);
    std::shuffle(c.genes.begin(), c.genes.end(), rng);
  }
  return pop;
}

double selection_weight(double fitness) { return 1.0 / (fitness + 1e-12); }

std::vector<std::size_t> selection(const std::vector<double> &fitnesses, Rng &rng) {
  const std::size_t n = fitnesses.size();
  std::vector<std::size_t> pool;
  if (n == 0) {
    return pool;
  }
  pool.reserve(n);
  pool.push_back(static_cast<std::size_t>(std::min_element(fitnesses.begin(), fitnesses.end()) - fitnesses.begin()));

  std::vector<double> cumulative(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    total += selection_weight(fitnesses[i]);
    cumulative[i] = total;
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> any(0, n - 1);
  while (pool.size() < n) {
    if (!(total > 0.0)) {
      pool.push_back(any(rng));
      continue;
    }
    const double r = unit(rng) * total;
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), r);
    pool.push_back(std::min(static_cast<std::size_t>(it - cumulative.begin()), n - 1));
  }
  return pool;
}

double adaptive_pc(double w_parent, double w_avg, double w_max, const GaParams &params) {
  const double spread = w_max - w_avg;
  if (!(spread > 0.0) || w_parent < w_avg) {
    return params.pc_hi;
  }
  const double pc = params.pc_hi - (params.pc_hi - params.pc_lo) * (w_parent - w_avg) / spread;
  return std::clamp(pc, params.pc_lo, params.pc_hi);
}

double adaptive_pm(double w_individual, double w_avg, double w_max, const GaParams &params) {
  const double spread = w_max - w_avg;
  if (!(spread > 0.0) || w_individual < w_avg) {
    return params.pm_hi;
  }
  const double pm = params.pm_hi - (params.pm_hi - params.pm_lo) * (w_max - w_individual) / spread;
  return std::clamp(pm, params.pm_lo, params.pm_hi);
}

std::pair<Chromosome, Chromosome> pmx_crossover(const Chromosome &a, const Chromosome &b, std::size_t cut1,
                                                std::size_t cut2) {
  const std::size_t len = a.genes.size();
  if (b.genes.size() != len || cut1 >= cut2 || cut2 > len) {
    throw std::invalid_argument("pmx_crossover: need equal-length parents and 0 <= cut1 < cut2 <= length");
  }
  Chromosome c1 = a, c2 = b;
  // to_a[v] maps a value from b's segment to a's gene at the same locus.
  std::vector<int> to_a(len + 1, 0), to_b(len + 1, 0);
  for (std::size_t i = cut1; i < cut2; ++i) {
    c1.genes[i] = b.genes[i];
    c2.genes[i] = a.genes[i];
    to_a[static_cast<std::size_t>(b.genes[i])] = a.genes[i];
    to_b[static_cast<std::size_t>(a.genes[i])] = b.genes[i];
  }
  for (std::size_t i = 0; i < len; ++i) {
    if (i >= cut1 && i < cut2) {
      continue;
    }
    int v = a.genes[i];
    while (to_a[static_cast<std::size_t>(v)] != 0) {
      v = to_a[static_cast<std::size_t>(v)];
    }
    c1.genes[i] = v;
    v = b.genes[i];
    while (to_b[static_cast<std::size_t>(v)] != 0) {
      v = to_b[static_cast<std::size_t>(v)];
    }
    c2.genes[i] = v;
  }
  return {std::move(c1), std::move(c2)};
}

std::pair<Chromosome, Chromosome> pmx_crossover(const Chromosome &a, const Chromosome &b, Rng &rng) {
  const std::size_t len = a.genes.size();
  if (len < 1) {
    return {a, b};
  }
  std::size_t cut1 = std::uniform_int_distribution<std::size_t>(0, len)(rng);
  std::size_t cut2 = std::uniform_int_distribution<std::size_t>(0, len - 1)(rng);
  if (cut2 >= cut1) {
    ++cut2;
  }
  if (cut1 > cut2) {
    std::swap(cut1, cut2);
  }
  return pmx_crossover(a, b, cut1, cut2);
}

Chromosome swap_genes(Chromosome c, std::size_t i, std::size_t j) {
  if (i == j || i >= c.genes.size() || j >= c.genes.size()) {
    throw std::invalid_argument("swap_genes: positions must be distinct and in range");
  }
  std::swap(c.genes[i], c.genes[j]);
  return c;
}

Chromosome swap_mutation(const Chromosome &c, Rng &rng) {
  const std::size_t len = c.genes.size();
  if (len < 2) {
    return c;
  }
  const std::size_t i = std::uniform_int_distribution<std::size_t>(0, len - 1)(rng);
  std::size_t j = std::uniform_int_distribution<std::size_t>(0, len - 2)(rng);
  if (j >= i) {
    ++j;
  }
  return swap_genes(c, i, j);
}

} // namespace geoplan::search
