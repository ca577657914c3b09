#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "dyadic/bellman.hpp"
#include "dyadic/dyadic_tree.hpp"

namespace dyadic {

// Where a check item lives: nowhere, a tree node, a point of the domain, or
// a pair of endpoints (x-, x+).
struct PointPair {
  DomainPoint minus;
  DomainPoint plus;
};
using Location = std::variant<std::monostate, NodeIndex, DomainPoint, PointPair>;

struct DetailRecord {
  std::string label;
  Location where;
  double measured = 0;
  double bound = 0;
  double margin = 0;  // bound - measured, in the check's margin units
};

struct VerificationReport {
  std::string check_name;
  bool passed = false;
  // Worst signed slack over all items. Each check states its units; the
  // invariant passed == (margin >= -tolerance) always holds.
  double margin = 0;
  double tolerance = 0;
  Location worst_case;
  std::vector<std::pair<std::string, double>> params;
  std::optional<std::uint64_t> seed;
  std::string generator;
  std::size_t items_checked = 0;
  std::size_t violations = 0;
  std::vector<std::string> notes;
  std::vector<DetailRecord> details;

  void set_pass_from_margin() { passed = margin >= -tolerance; }
};

// Smallest delta accepted for a measured characteristic. A weight with
// measured RH constant 1 (constant on J) belongs to every larger class.
inline constexpr double kMinDelta = 1.0 + 1e-12;

// Params from measured characteristics: delta = max(rh, kMinDelta),
// bigQ = max(Db, 2).
BellmanParams measured_params(const DyadicWeight& w, double p);

// <w^q>_I <= b_max(<w>_I, <w^p>_I) at every node I. Missing delta / bigQ are
// measured from w. Margin units: (b_max - <w^q>_I) / b_max; tolerance 1e-9.
// details[0] is the root with the absolute margin b_max - <w^q>_J.
VerificationReport verify_theorem(const DyadicWeight& w, double p, double q,
                                  std::optional<double> delta = {},
                                  std::optional<double> bigQ = {});

// Corollary constant against the measured A_q characteristic of w (variant W)
// or of w^p (variant WPowP), with delta and bigQ measured from w.
// Margin: constant - measured; tolerance 1e-9 * constant.
VerificationReport verify_corollary(const DyadicWeight& w, double p,
                                    double q_muck, CorollaryVariant variant);

struct HessianGrid {
  int nx = 64;
  int ny = 64;
};

// Largest Hessian eigenvalue of b_max over x1 in [0.5, 2],
// x2 = x1^p (1 + t (eps^p - 1)), t in [region_margin, 1 - region_margin].
// The Hessian is the central difference (relative step `rel_step`) of the
// analytic gradient. Margin: -max(lambda_max / |b_max|); tolerance 1e-6.
VerificationReport hessian_scan(const BellmanParams& params, double q,
                                HessianGrid grid, double region_margin,
                                double rel_step = 1e-5);

// Random admissible pairs x-, x+ in Omega'_delta: x1 log-uniform on
// [0.1, 10], x2 between the boundaries, midpoint x in Omega'_delta and
// x1 <= bigQ * x1^{+-}. Aborts after kMaxRejections consecutive rejections.
inline constexpr std::size_t kMaxRejections = 1'000'000;
inline constexpr int kSegmentSamples = 64;

// b_max(x) >= (b_max(x-) + b_max(x+)) / 2 on sampled pairs, after checking the
// segment lies in Omega_eps. Margin units: slack / |b_max(x)|; tolerance 1e-9.
VerificationReport midpoint_concavity(const BellmanParams& params, double q,
                                      std::size_t trials, std::uint64_t seed);

// Segment x- -> x+ stays in Omega_eps for sampled pairs and for the two
// extremal configurations. Margin: eps - max x2^{1/p}/x1; tolerance 1e-9 eps.
VerificationReport segment_containment(const BellmanParams& params,
                                       std::size_t trials, std::uint64_t seed);

// Maximum of x2^{1/p}/x1 along the chord joining (1, delta^p) and
// (factor, factor^p delta^p) on the upper boundary of Omega'_delta.
// factor = bigQ is the worst case behind the choice of eps.
double upper_chord_max(const BellmanParams& params, double factor);

// S(n) = sum over level-n nodes of |I| b_max(<w>_I, <w^p>_I) must not increase
// with n and S(depth) must equal <w^q>_J. Margin units: step drop / S(0);
// tolerance 1e-12. Throws OutsideDomain naming the first node off Omega_eps.
VerificationReport induction_chain(const DyadicWeight& w, double p, double q,
                                   const BellmanParams& params);

}  // namespace dyadic
