#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "dyadic/dyadic_tree.hpp"
#include "dyadic/errors.hpp"
#include "dyadic/random.hpp"

using namespace dyadic;

namespace {

ErrorCode code_of(std::vector<double> leaves) {
  try {
    DyadicWeight::build(std::move(leaves));
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a validation error");
  return ErrorCode::Io;
}

DyadicWeight random_weight(Rng& rng, int depth) {
  std::vector<double> leaves(std::size_t{1} << depth);
  for (double& v : leaves) v = rng.log_uniform(1e-3, 1e3);
  return DyadicWeight::build(std::move(leaves));
}

}  // namespace

TEST_CASE("build_weight validates its leaves") {
  CHECK(DyadicWeight::build({1.0}).depth() == 0);
  CHECK(DyadicWeight::build({1.0, 3.0}).depth() == 1);
  CHECK(DyadicWeight::build(std::vector<double>(1024, 2.0)).depth() == 10);

  CHECK(code_of({}) == ErrorCode::EmptyInput);
  CHECK(code_of({1.0, 2.0, 3.0}) == ErrorCode::NotPowerOfTwo);
  CHECK(code_of({1.0, 0.0}) == ErrorCode::NonPositiveValue);
  CHECK(code_of({1.0, -2.0}) == ErrorCode::NonPositiveValue);
  CHECK(code_of({1.0, std::numeric_limits<double>::infinity()}) ==
        ErrorCode::NonFiniteValue);
  CHECK(code_of({std::nan(""), 1.0}) == ErrorCode::NonFiniteValue);
}

TEST_CASE("node index arithmetic") {
  for (std::size_t k = 0; k < 63; ++k) {
    const NodeIndex node = NodeIndex::from_flat(k);
    CHECK(node.flat() == k);
    CHECK(node.offset < (std::int64_t{1} << node.level));
    if (k > 0) {
      CHECK(node.parent().flat() == (k - 1) / 2);
    }
  }
  CHECK(NodeIndex{2, 3}.left() == NodeIndex{3, 6});
  CHECK(NodeIndex{2, 3}.right() == NodeIndex{3, 7});
}

TEST_CASE("power_averages on small trees") {
  const auto w = DyadicWeight::build({1.0, 3.0});
  const auto first = power_averages(w, 1.0);
  CHECK(first.root() == 2.0);
  CHECK(first.at({1, 0}) == 1.0);
  CHECK(first.at({1, 1}) == 3.0);
  CHECK(power_averages(w, 2.0).root() == 5.0);

  const auto c = DyadicWeight::build(std::vector<double>(8, 1.7));
  for (double r : {-2.5, -1.0, 0.5, 3.0}) {
    const auto table = power_averages(c, r);
    for (double v : table.values()) {
      CHECK(v == doctest::Approx(std::pow(1.7, r)).epsilon(1e-15));
    }
  }
  CHECK_THROWS_AS(first.at({2, 0}), Error);
  CHECK_THROWS_AS(first.at({1, 2}), Error);
}

TEST_CASE("node_pair") {
  const auto w = DyadicWeight::build({1.0, 3.0});
  CHECK(node_pair(w, {0, 0}, 2.0) == DomainPoint{2.0, 5.0});
  CHECK(node_pair(w, {1, 0}, 2.0) == DomainPoint{1.0, 1.0});
  const auto c = DyadicWeight::build({2.0, 2.0, 2.0, 2.0});
  const DomainPoint x = node_pair(c, {0, 0}, 3.0);
  CHECK(x.x1 == 2.0);
  CHECK(x.x2 == doctest::Approx(8.0).epsilon(1e-15));
  CHECK_THROWS_AS(node_pair(w, {2, 0}, 2.0), Error);
  CHECK_THROWS_AS(node_pair(power_averages(w, 2.0), power_averages(w, 2.0), {0, 0}),
                  Error);
}

TEST_CASE("average tables: parent mean, Jensen, r = 0, scaling") {
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  Rng rng(20240601);
  for (int trial = 0; trial < 200; ++trial) {
    const int depth = 1 + static_cast<int>(rng.below(8));
    const auto w = random_weight(rng, depth);
    const double r = rng.uniform(-3.0, 3.0);
    const auto table = power_averages(w, r);
    const auto v = table.values();
    for (std::size_t k = 0; k + 1 < w.size(); ++k) {
      CHECK(std::abs(v[k] - (v[2 * k + 1] + v[2 * k + 2]) / 2) <= 4 * kEps * v[k]);
      CHECK(v[k] > 0.0);
    }

    const double p = rng.uniform(1.01, 4.0);
    const auto first = power_averages(w, 1.0);
    const auto pth = power_averages(w, p);
    for (std::size_t k = 0; k < w.node_count(); ++k) {
      CHECK(std::pow(first.values()[k], p) <= pth.values()[k] * (1.0 + 1e-12));
    }

    const auto zeroth = power_averages(w, 0.0);
    for (double z : zeroth.values()) CHECK(z == 1.0);

    const double c = rng.log_uniform(0.01, 100.0);
    const auto scaled = power_averages(w.scaled(c), r);
    for (std::size_t k = 0; k < w.node_count(); ++k) {
      CHECK(scaled.values()[k] ==
            doctest::Approx(std::pow(c, r) * v[k]).epsilon(1e-12));
    }
  }
}
