#pragma once

#include <optional>

#include "dyadic/dyadic_tree.hpp"

namespace dyadic {

// A supremum over the dyadic subintervals of J together with the first node
// (in (level, offset) order) that attains it.
struct Characteristic {
  double value = 1.0;
  NodeIndex argmax{};
};

// Every characteristic below is a maximum over the nodes of levels
// 0..max_level (default: the whole tree). For a step weight constant on the
// leaves, the whole-tree maximum equals the supremum over all of D(J).

// sup_I <w^p>_I^{1/p} / <w>_I; requires p > 1.
Characteristic rh_characteristic(const DyadicWeight& w, double p,
                                 std::optional<int> max_level = {});

// sup_I <w>_I <w^{-1/(q-1)}>_I^{q-1}; requires q > 1.
Characteristic aq_characteristic(const DyadicWeight& w, double q,
                                 std::optional<int> max_level = {});

// sup over I != J of <w>_{parent(I)} / <w>_I. A depth-0 weight has no
// parent/child pair and reports 1.
Characteristic doubling_constant(const DyadicWeight& w,
                                 std::optional<int> max_level = {});

struct WeightProfile {
  double p = 2.0;
  double q_muck = 2.0;
  Characteristic rh;
  Characteristic aq;
  Characteristic doubling;
};

WeightProfile profile(const DyadicWeight& w, double p, double q_muck);

}  // namespace dyadic
