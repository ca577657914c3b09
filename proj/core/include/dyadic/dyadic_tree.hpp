#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dyadic/domain_point.hpp"

namespace dyadic {

// Address of a dyadic subinterval of J = [0, 1]: the `offset`-th interval of
// length 2^-level.
struct NodeIndex {
  int level = 0;
  std::int64_t offset = 0;

  friend bool operator==(const NodeIndex&, const NodeIndex&) = default;
  friend auto operator<=>(const NodeIndex&, const NodeIndex&) = default;

  NodeIndex parent() const { return {level - 1, offset / 2}; }
  NodeIndex left() const { return {level + 1, 2 * offset}; }
  NodeIndex right() const { return {level + 1, 2 * offset + 1}; }

  // Position in a heap-ordered array (root at 0).
  std::size_t flat() const {
    return (std::size_t{1} << level) - 1 + static_cast<std::size_t>(offset);
  }
  static NodeIndex from_flat(std::size_t flat);
};

// A positive step function constant on the 2^depth intervals of D_depth(J).
class DyadicWeight {
 public:
  // Validates the leaves; throws Error with a distinct code for empty input,
  // non-power-of-two length, non-finite values and non-positive values.
  static DyadicWeight build(std::vector<double> leaves);

  int depth() const noexcept { return depth_; }
  std::span<const double> leaves() const noexcept { return leaves_; }
  std::size_t size() const noexcept { return leaves_.size(); }
  std::size_t node_count() const noexcept { return 2 * leaves_.size() - 1; }

  bool contains(NodeIndex node) const noexcept;

  // c * w, leafwise.
  DyadicWeight scaled(double c) const;
  // w^r, leafwise.
  DyadicWeight powered(double r) const;

 private:
  DyadicWeight(int depth, std::vector<double> leaves)
      : depth_(depth), leaves_(std::move(leaves)) {}

  int depth_ = 0;
  std::vector<double> leaves_;
};

// Averages <w^r>_I for every node I, stored in heap order.
class AverageTable {
 public:
  AverageTable(double exponent, int depth, std::vector<double> values)
      : exponent_(exponent), depth_(depth), values_(std::move(values)) {}

  double exponent() const noexcept { return exponent_; }
  int depth() const noexcept { return depth_; }

  double at(NodeIndex node) const;
  double root() const noexcept { return values_.front(); }

  // The 2^level averages of one level, left to right.
  std::span<const double> level(int level) const;
  std::span<const double> values() const& noexcept { return values_; }
  std::span<const double> values() const&& = delete;

 private:
  double exponent_;
  int depth_;
  std::vector<double> values_;
};

AverageTable power_averages(const DyadicWeight& w, double r);

// (<w>_I, <w^p>_I) from the r = 1 and r = p tables of the same weight.
DomainPoint node_pair(const AverageTable& first, const AverageTable& pth,
                      NodeIndex node);
DomainPoint node_pair(const DyadicWeight& w, NodeIndex node, double p);

}  // namespace dyadic
