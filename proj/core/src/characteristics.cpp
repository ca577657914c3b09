#include "dyadic/characteristics.hpp"

#include <cmath>
#include <string>

#include "dyadic/errors.hpp"

namespace dyadic {
namespace {

int resolve_levels(const DyadicWeight& w, std::optional<int> max_level) {
  if (!max_level) return w.depth();
  if (*max_level < 0 || *max_level > w.depth()) {
    throw Error(ErrorCode::IndexOutOfRange, "max_level",
                "max_level " + std::to_string(*max_level) +
                    " outside [0, depth]");
  }
  return *max_level;
}

// Maximum of ratio(k) over heap positions k < count, first maximiser wins.
template <typename Ratio>
Characteristic max_over_nodes(std::size_t first, std::size_t count,
                              Ratio ratio) {
  Characteristic best{ratio(first), NodeIndex::from_flat(first)};
  for (std::size_t k = first + 1; k < count; ++k) {
    const double value = ratio(k);
    if (value > best.value) best = {value, NodeIndex::from_flat(k)};
  }
  return best;
}

std::size_t nodes_through(int level) { return (std::size_t{2} << level) - 1; }

}  // namespace

Characteristic rh_characteristic(const DyadicWeight& w, double p,
                                 std::optional<int> max_level) {
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw Error(ErrorCode::ParameterDomain, "p", "p must be a finite real > 1");
  }
  const int levels = resolve_levels(w, max_level);
  const auto first = power_averages(w, 1.0);
  const auto pth = power_averages(w, p);
  const auto a = first.values();
  const auto b = pth.values();
  return max_over_nodes(0, nodes_through(levels), [&](std::size_t k) {
    return std::pow(b[k], 1.0 / p) / a[k];
  });
}

Characteristic aq_characteristic(const DyadicWeight& w, double q,
                                 std::optional<int> max_level) {
  if (!(q > 1.0) || !std::isfinite(q)) {
    throw Error(ErrorCode::ParameterDomain, "q_muck",
                "q_muck must be a finite real > 1");
  }
  const int levels = resolve_levels(w, max_level);
  const auto first = power_averages(w, 1.0);
  const auto dual = power_averages(w, -1.0 / (q - 1.0));
  const auto a = first.values();
  const auto b = dual.values();
  return max_over_nodes(0, nodes_through(levels), [&](std::size_t k) {
    return a[k] * std::pow(b[k], q - 1.0);
  });
}

Characteristic doubling_constant(const DyadicWeight& w,
                                 std::optional<int> max_level) {
  const int levels = resolve_levels(w, max_level);
  if (levels == 0) return {1.0, NodeIndex{}};
  const auto first = power_averages(w, 1.0);
  const auto a = first.values();
  // argmax is the child I; its parent is I*.
  return max_over_nodes(1, nodes_through(levels), [&](std::size_t k) {
    return a[(k - 1) / 2] / a[k];
  });
}

WeightProfile profile(const DyadicWeight& w, double p, double q_muck) {
  WeightProfile out;
  out.p = p;
  out.q_muck = q_muck;
  out.rh = rh_characteristic(w, p);
  out.aq = aq_characteristic(w, q_muck);
  out.doubling = doubling_constant(w);
  return out;
}

}  // namespace dyadic
