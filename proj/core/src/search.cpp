#include "dyadic/search.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dyadic/errors.hpp"

namespace dyadic {
namespace {

[[noreturn]] void reject(const char* field, const std::string& message) {
  throw Error(ErrorCode::ParameterDomain, field, message);
}

// log of <w^p>/<w>^p gained by splitting a constant into a(1 +- theta).
double split_cost(double theta, double p) {
  return std::log((std::pow(1.0 + theta, p) + std::pow(1.0 - theta, p)) / 2.0);
}

// Largest theta in [0, cap] whose split cost fits the budget.
double affordable_theta(double budget, double p, double cap) {
  if (budget <= 0.0) return 0.0;
  if (split_cost(cap, p) <= budget) return cap;
  double lo = 0.0;
  double hi = cap;
  for (int it = 0; it < 100; ++it) {
    const double mid = (lo + hi) / 2;
    (split_cost(mid, p) <= budget ? lo : hi) = mid;
  }
  return lo;
}

void split(std::vector<double>& leaves, std::size_t first, std::size_t count,
           double average, double budget, const SearchConfig& config, Rng& rng) {
  if (count == 1) {
    leaves[first] = average;
    return;
  }
  const double theta_max =
      affordable_theta(budget, config.p, 1.0 - 1.0 / config.q_cap);
  const double theta = rng.uniform(-theta_max, theta_max);
  const double remaining = budget - split_cost(theta, config.p);
  const std::size_t half = count / 2;
  split(leaves, first, half, average * (1.0 + theta), remaining, config, rng);
  split(leaves, first + half, half, average * (1.0 - theta), remaining, config, rng);
}

struct Feasibility {
  double rh;
  double doubling;
};

Feasibility measure(const DyadicWeight& w, double p) {
  return {rh_characteristic(w, p).value, doubling_constant(w).value};
}

}  // namespace

void validate(const SearchConfig& config) {
  if (config.depth < 1 || config.depth > 20) reject("depth", "depth must lie in [1, 20]");
  if (!(config.p > 1.0) || !std::isfinite(config.p)) reject("p", "p must be > 1");
  if (!(config.delta_cap > 1.0) || !std::isfinite(config.delta_cap)) {
    reject("delta", "delta_cap must be > 1");
  }
  if (!(config.q_cap >= 2.0) || !std::isfinite(config.q_cap)) {
    reject("bigQ", "q_cap must be >= 2");
  }
  if (config.iterations < 0) reject("iterations", "iterations must be >= 0");
  if (!(config.step_scale > 0.0) || !std::isfinite(config.step_scale)) {
    reject("step_scale", "step_scale must be > 0");
  }
  if (!(config.q_muck > 1.0)) reject("q_muck", "q_muck must be > 1");
  const BellmanParams params = make_params(config.p, config.delta_cap, config.q_cap);
  if (!params.admissible_q(config.q)) {
    reject("q", "q must lie in (1/s_minus, 0) = (" +
                    std::to_string(1.0 / params.s_minus()) + ", 0)");
  }
}

BellmanParams search_params(const SearchConfig& config) {
  validate(config);
  return make_params(config.p, config.delta_cap, config.q_cap);
}

DyadicWeight sample_weight(const SearchConfig& config, Rng& rng) {
  validate(config);
  const std::size_t n = std::size_t{1} << config.depth;
  std::vector<double> leaves(n);
  const double root = rng.log_uniform(0.1, 10.0);
  const double budget = config.p * std::log(config.delta_cap);
  split(leaves, 0, n, root, budget, config, rng);
  return DyadicWeight::build(std::move(leaves));
}

DyadicWeight sample_weight(const SearchConfig& config) {
  Rng rng(config.seed);
  return sample_weight(config, rng);
}

double bound_ratio(const DyadicWeight& w, double q, const BellmanParams& params) {
  const double x1 = power_averages(w, 1.0).root();
  const double x2 = power_averages(w, params.p()).root();
  const double wq = power_averages(w, q).root();
  return wq / b_max({x1, x2}, q, params);
}

SearchResult local_search(const SearchConfig& config) {
  const BellmanParams params = search_params(config);
  Rng rng(config.seed);
  DyadicWeight best = sample_weight(config, rng);
  double best_ratio = bound_ratio(best, config.q, params);
  std::vector<std::pair<int, double>> trace{{0, best_ratio}};

  const double decay =
      config.iterations > 0 ? std::pow(0.01, 1.0 / config.iterations) : 1.0;
  double eta = 1.0;
  for (int it = 1; it <= config.iterations; ++it) {
    eta *= decay;
    const std::size_t leaf = rng.below(best.size());
    const double factor = std::exp(eta * rng.normal() * config.step_scale);
    std::vector<double> leaves(best.leaves().begin(), best.leaves().end());
    leaves[leaf] *= factor;
    if (!std::isfinite(leaves[leaf]) || !(leaves[leaf] > 0.0)) continue;
    DyadicWeight candidate = DyadicWeight::build(std::move(leaves));
    const Feasibility f = measure(candidate, config.p);
    if (f.rh > config.delta_cap || f.doubling > config.q_cap) continue;
    const double ratio = bound_ratio(candidate, config.q, params);
    if (ratio > best_ratio) {
      best = std::move(candidate);
      best_ratio = ratio;
      trace.emplace_back(it, ratio);
    }
  }

  return {best, best_ratio, profile(best, config.p, config.q_muck), std::move(trace)};
}

}  // namespace dyadic
