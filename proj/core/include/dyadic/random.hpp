#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace dyadic {

// Reproducible random source. The engine's output sequence is fixed by the
// C++ standard; the distributions are implemented here rather than taken from
// <random>, whose algorithms are implementation-defined.
class Rng {
 public:
  static constexpr const char* kGeneratorName = "mt19937_64";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // exp of a uniform draw on [log lo, log hi].
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }

  std::uint64_t below(std::uint64_t n) { return engine_() % n; }

  // Standard normal via Box-Muller (one variate per call).
  double normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 engine_;
};

// Per-trial stream so that trials are independent of evaluation order.
inline Rng trial_rng(std::uint64_t seed, std::uint64_t trial) {
  return Rng(seed + trial);
}

}  // namespace dyadic
