#include <doctest.h>

#include <cmath>

#include "dyadic/characteristics.hpp"
#include "dyadic/errors.hpp"
#include "dyadic/bellman.hpp"
#include "dyadic/search.hpp"

using namespace dyadic;

namespace {

SearchConfig base_config() {
  SearchConfig c;
  c.depth = 4;
  c.p = 2.0;
  c.q = -0.5;
  c.delta_cap = 1.2;
  c.q_cap = 2.0;
  c.iterations = 2000;
  c.seed = 3;
  return c;
}

}  // namespace

TEST_CASE("config validation names the offending field") {
  auto field_of = [](SearchConfig c) {
    try {
      validate(c);
    } catch (const Error& e) {
      return e.field();
    }
    return std::string{};
  };
  SearchConfig c = base_config();
  CHECK(field_of(c).empty());
  c.depth = 0;
  CHECK(field_of(c) == "depth");
  c = base_config();
  c.q_cap = 1.5;
  CHECK(field_of(c) == "bigQ");
  c = base_config();
  c.delta_cap = 1.0;
  CHECK(field_of(c) == "delta");
  c = base_config();
  c.q = -100.0;
  CHECK(field_of(c) == "q");
  c = base_config();
  c.step_scale = 0.0;
  CHECK(field_of(c) == "step_scale");
}

TEST_CASE("sample_weight respects the caps") {
  SUBCASE("regression: depth 8, seed 11, delta_cap 1.2, q_cap 3") {
    SearchConfig c = base_config();
    c.depth = 8;
    c.seed = 11;
    c.q_cap = 3.0;
    c.q = -0.1;
    const DyadicWeight w = sample_weight(c);
    CHECK(w.depth() == 8);
    CHECK(rh_characteristic(w, c.p).value <= 1.2 * (1 + 1e-12));
    CHECK(doubling_constant(w).value <= 3.0 * (1 + 1e-12));
    CHECK(rh_characteristic(w, c.p).value > 1.0);
  }
  SUBCASE("zero RH budget gives a constant weight") {
    SearchConfig c = base_config();
    c.delta_cap = 1.0 + 1e-15;
    c.q = -0.1;
    const DyadicWeight w = sample_weight(c);
    for (double v : w.leaves()) CHECK(v == doctest::Approx(w.leaves()[0]).epsilon(1e-6));
  }
  SUBCASE("depth 1, q_cap 2: children within a factor 2 of the parent") {
    SearchConfig c = base_config();
    c.depth = 1;
    c.delta_cap = 3.0;
    c.q = -0.01;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      c.seed = seed;
      const DyadicWeight w = sample_weight(c);
      const double avg = (w.leaves()[0] + w.leaves()[1]) / 2;
      CHECK(avg / w.leaves()[0] <= 2.0 * (1 + 1e-12));
      CHECK(avg / w.leaves()[1] <= 2.0 * (1 + 1e-12));
    }
  }
  SUBCASE("random configurations") {
    Rng rng(1234);
    for (int i = 0; i < 300; ++i) {
      SearchConfig c = base_config();
      c.depth = 1 + static_cast<int>(rng.below(8));
      c.p = rng.uniform(1.2, 4.0);
      c.delta_cap = rng.uniform(1.01, 2.0);
      c.q_cap = rng.uniform(2.0, 6.0);
      c.q = 0.5 / make_params(c.p, c.delta_cap, c.q_cap).s_minus();
      const DyadicWeight w = sample_weight(c, rng);
      CHECK(rh_characteristic(w, c.p).value <= c.delta_cap * (1 + 1e-12));
      CHECK(doubling_constant(w).value <= c.q_cap * (1 + 1e-12));
    }
  }
}

TEST_CASE("local_search") {
  SUBCASE("no iterations returns the initial sample") {
    SearchConfig c = base_config();
    c.iterations = 0;
    const SearchResult r = local_search(c);
    CHECK(r.trace.size() == 1);
    CHECK(r.best_ratio == r.trace.back().second);
    CHECK(r.best_weight.leaves()[0] == sample_weight(c).leaves()[0]);
  }
  SUBCASE("constant weight has ratio 1") {
    SearchConfig c = base_config();
    const auto params = search_params(c);
    const auto w = DyadicWeight::build(std::vector<double>(16, 1.7));
    CHECK(bound_ratio(w, c.q, params) == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("ratios stay below 1 and the trace is monotone") {
    const SearchResult r = local_search(base_config());
    CHECK(r.best_ratio <= 1.0 + 1e-9);
    CHECK(r.best_ratio > 0.0);
    CHECK(r.trace.back().second == r.best_ratio);
    for (std::size_t i = 1; i < r.trace.size(); ++i) {
      CHECK(r.trace[i].second > r.trace[i - 1].second);
      CHECK(r.trace[i].first > r.trace[i - 1].first);
    }
    CHECK(r.measured_profile.rh.value <= 1.2 * (1 + 1e-12));
    CHECK(r.measured_profile.doubling.value <= 2.0 * (1 + 1e-12));
    CHECK(rh_characteristic(r.best_weight, 2.0).value == r.measured_profile.rh.value);
  }
  SUBCASE("deterministic given the seed") {
    const SearchResult a = local_search(base_config());
    const SearchResult b = local_search(base_config());
    CHECK(a.best_ratio == b.best_ratio);
    CHECK(a.trace == b.trace);
    CHECK(std::equal(a.best_weight.leaves().begin(), a.best_weight.leaves().end(),
                     b.best_weight.leaves().begin()));
  }
}
