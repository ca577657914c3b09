#include "dyadic/dyadic_tree.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "dyadic/errors.hpp"

namespace dyadic {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptyInput: return "empty input";
    case ErrorCode::NotPowerOfTwo: return "length not a power of two";
    case ErrorCode::NonPositiveValue: return "non-positive value";
    case ErrorCode::NonFiniteValue: return "non-finite value";
    case ErrorCode::IndexOutOfRange: return "index out of range";
    case ErrorCode::ParameterDomain: return "parameter out of domain";
    case ErrorCode::OutsideDomain: return "point outside domain";
    case ErrorCode::SolverRange: return "t below solver range";
    case ErrorCode::FormMismatch: return "bound forms disagree";
    case ErrorCode::SamplerExhausted: return "sampler exhausted";
    case ErrorCode::MalformedInput: return "malformed input";
    case ErrorCode::Io: return "i/o error";
  }
  return "unknown error";
}

NodeIndex NodeIndex::from_flat(std::size_t flat) {
  const int level = std::bit_width(flat + 1) - 1;
  return {level, static_cast<std::int64_t>(flat + 1 - (std::size_t{1} << level))};
}

DyadicWeight DyadicWeight::build(std::vector<double> leaves) {
  if (leaves.empty()) {
    throw Error(ErrorCode::EmptyInput, "leaves", "weight has no leaf values");
  }
  if (!std::has_single_bit(leaves.size())) {
    throw Error(ErrorCode::NotPowerOfTwo, "leaves",
                "leaf count " + std::to_string(leaves.size()) +
                    " is not a power of two");
  }
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    if (!std::isfinite(leaves[i])) {
      throw Error(ErrorCode::NonFiniteValue, "leaves",
                  "leaf " + std::to_string(i) + " is not finite");
    }
    if (!(leaves[i] > 0.0)) {
      throw Error(ErrorCode::NonPositiveValue, "leaves",
                  "leaf " + std::to_string(i) + " is not strictly positive");
    }
  }
  const int depth = std::countr_zero(leaves.size());
  return DyadicWeight(depth, std::move(leaves));
}

bool DyadicWeight::contains(NodeIndex node) const noexcept {
  return node.level >= 0 && node.level <= depth_ && node.offset >= 0 &&
         node.offset < (std::int64_t{1} << node.level);
}

DyadicWeight DyadicWeight::scaled(double c) const {
  std::vector<double> out(leaves_.begin(), leaves_.end());
  for (double& v : out) v *= c;
  return build(std::move(out));
}

DyadicWeight DyadicWeight::powered(double r) const {
  std::vector<double> out(leaves_.begin(), leaves_.end());
  for (double& v : out) v = std::pow(v, r);
  return build(std::move(out));
}

double AverageTable::at(NodeIndex node) const {
  if (node.level < 0 || node.level > depth_ || node.offset < 0 ||
      node.offset >= (std::int64_t{1} << node.level)) {
    throw Error(ErrorCode::IndexOutOfRange, "node",
                "node (" + std::to_string(node.level) + ", " +
                    std::to_string(node.offset) + ") is not in the tree");
  }
  return values_[node.flat()];
}

std::span<const double> AverageTable::level(int level) const {
  if (level < 0 || level > depth_) {
    throw Error(ErrorCode::IndexOutOfRange, "level",
                "level " + std::to_string(level) + " is not in the tree");
  }
  const std::size_t first = (std::size_t{1} << level) - 1;
  return std::span<const double>(values_).subspan(first, std::size_t{1} << level);
}

AverageTable power_averages(const DyadicWeight& w, double r) {
  if (!std::isfinite(r)) {
    throw Error(ErrorCode::ParameterDomain, "r", "exponent must be finite");
  }
  const std::size_t n = w.size();
  std::vector<double> values(2 * n - 1);
  const auto leaves = w.leaves();
  for (std::size_t i = 0; i < n; ++i) {
    values[n - 1 + i] = r == 1.0 ? leaves[i] : std::pow(leaves[i], r);
  }
  for (std::size_t k = n - 1; k-- > 0;) {
    values[k] = (values[2 * k + 1] + values[2 * k + 2]) / 2;
  }
  return AverageTable(r, w.depth(), std::move(values));
}

DomainPoint node_pair(const AverageTable& first, const AverageTable& pth,
                      NodeIndex node) {
  if (first.exponent() != 1.0 || first.depth() != pth.depth()) {
    throw Error(ErrorCode::ParameterDomain, "table",
                "node_pair needs the r = 1 table and a p-th power table of "
                "the same weight");
  }
  return {first.at(node), pth.at(node)};
}

DomainPoint node_pair(const DyadicWeight& w, NodeIndex node, double p) {
  if (!w.contains(node)) {
    throw Error(ErrorCode::IndexOutOfRange, "node", "node is not in the tree");
  }
  return node_pair(power_averages(w, 1.0), power_averages(w, p), node);
}

}  // namespace dyadic
