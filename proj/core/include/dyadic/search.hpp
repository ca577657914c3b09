#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dyadic/bellman.hpp"
#include "dyadic/characteristics.hpp"
#include "dyadic/dyadic_tree.hpp"
#include "dyadic/random.hpp"

namespace dyadic {

struct SearchConfig {
  int depth = 4;
  double p = 2.0;
  double q = -0.5;
  double delta_cap = 1.2;
  double q_cap = 2.0;  // doubling cap
  int iterations = 1000;
  double step_scale = 0.5;
  std::uint64_t seed = 0;
  double q_muck = 2.0;  // only used for the reported profile
};

// Throws ParameterDomain naming the first offending field.
void validate(const SearchConfig& config);

// make_params(p, delta_cap, q_cap) after validation.
BellmanParams search_params(const SearchConfig& config);

// Random weight of the given depth with rh <= delta_cap and doubling <= q_cap.
// Built top-down: a node with average a splits into a(1 + theta) and
// a(1 - theta). |theta| <= 1 - 1/q_cap bounds every parent/child ratio, and
// each node carries the remaining log-budget for <w^p>/<w>^p, charged
// log(((1+theta)^p + (1-theta)^p)/2) per split, which bounds the RH ratio
// of every subtree.
DyadicWeight sample_weight(const SearchConfig& config, Rng& rng);
DyadicWeight sample_weight(const SearchConfig& config);

struct SearchResult {
  DyadicWeight best_weight;
  double best_ratio = 0;  // <w^q>_J / b_max(<w>_J, <w^p>_J)
  WeightProfile measured_profile;
  std::vector<std::pair<int, double>> trace;  // (iteration, ratio) at each improvement
};

// <w^q>_J / b_max(<w>_J, <w^p>_J) for the given params.
double bound_ratio(const DyadicWeight& w, double q, const BellmanParams& params);

// Hill climbing over leaf values from sample_weight(config): one leaf per
// iteration is multiplied by exp(eta N(0,1) step_scale) with eta decaying
// geometrically from 1 to 0.01; a move is kept iff the weight stays inside
// the caps and the ratio increases.
SearchResult local_search(const SearchConfig& config);

}  // namespace dyadic
