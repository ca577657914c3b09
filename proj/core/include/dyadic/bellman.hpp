#pragma once

#include <array>
#include <utility>

#include "dyadic/domain_point.hpp"

namespace dyadic {

enum class Branch { Plus, Minus };

struct SolverOptions {
  double abs_tol = 1e-13;       // on u, scaled by max(1, |u|)
  double residual_tol = 1e-12;  // on (1-pu)^{1/p}/(1-u) - t, scaled by max(1, t)
  double floor = -1e12;         // lowest u explored on the minus branch
  int max_iterations = 400;
};

// (1 - p u)^{1/p} / (1 - u), defined for u <= 1/p.
double implicit_lhs(double u, double p);

// Solves (1 - p u)^{1/p} (1 - u)^{-1} = t for 0 < t <= 1. The left side
// increases on (-inf, 0] and decreases on [0, 1/p], peaking at 1 when u = 0,
// so each branch has exactly one root: Plus in [0, 1/p), Minus in (-inf, 0].
double u_branch(double t, double p, Branch branch,
                const SolverOptions& options = {});

// Parameters of the dyadic upper Bellman function together with its derived
// constants. Construct with make_params.
class BellmanParams {
 public:
  double p() const noexcept { return p_; }
  double delta() const noexcept { return delta_; }
  double bigQ() const noexcept { return bigQ_; }
  // (Q^p - 1) / (Q - 1)
  double H() const noexcept { return H_; }
  // Enlarged Reverse Hölder constant absorbing the dyadic jumps.
  double eps() const noexcept { return eps_; }
  double s_minus() const noexcept { return s_minus_; }
  double s_plus() const noexcept { return s_plus_; }

  // Open interval (1/s_minus, 0) of exponents q the bound applies to.
  std::pair<double, double> q_range() const noexcept {
    return {1.0 / s_minus_, 0.0};
  }
  bool admissible_q(double q) const noexcept {
    return q > 1.0 / s_minus_ && q < 0.0;
  }

 private:
  friend BellmanParams make_params(double, double, double);
  BellmanParams() = default;

  double p_ = 0, delta_ = 0, bigQ_ = 0;
  double H_ = 0, eps_ = 0, s_minus_ = 0, s_plus_ = 0;
};

// Requires p > 1, delta > 1, bigQ >= 2. Callers holding a measured doubling
// constant below 2 pass max(Db, 2).
BellmanParams make_params(double p, double delta, double bigQ);

inline constexpr double kDomainSlack = 1e-12;

// x1^p <= x2 <= bound^p x1^p, with relative slack kDomainSlack.
bool in_omega(const DomainPoint& point, double bound, double p);

// u^-(x2^{1/p} / (eps x1)), in [s_minus, 0]. Throws OutsideDomain off Omega_eps.
double r_minus(const DomainPoint& point, const BellmanParams& params);

struct BoundForms {
  double r_minus = 0;
  double form1 = 0;  // x1^q (1 - q r)/(1 - q s) ((1 - s)/(1 - r))^q
  double form2 = 0;  // x2^{q/p} (1 - q r)/(1 - q s) ((1 - p s)/(1 - p r))^{q/p}
};

inline constexpr double kFormTolerance = 1e-9;

// Both forms of the bound; throws FormMismatch if they differ by more than
// kFormTolerance relative.
BoundForms b_max_forms(const DomainPoint& point, double q,
                       const BellmanParams& params);

// Upper bound for <w^q>_J over weights with <w>_J = x1, <w^p>_J = x2,
// dyadic RH_p constant <= delta and doubling constant <= bigQ.
double b_max(const DomainPoint& point, double q, const BellmanParams& params);

// (dB/dx1, dB/dx2). With K = q(1-q)(1-p r)/((1-q r)(1-p)):
//   dB/dx1 = B (q - K) / x1,   dB/dx2 = B K / (p x2).
std::array<double, 2> b_max_gradient(const DomainPoint& point, double q,
                                     const BellmanParams& params);

enum class CorollaryVariant { W, WPowP };

// 1 - s_minus for W, 1 - p s_minus for WPowP. The constant is defined for
// q_muck strictly above it.
double corollary_threshold(const BellmanParams& params, CorollaryVariant variant);

// ((q-1)/(q-1+s))^{q-1} with s = s_minus (W) or p s_minus (WPowP): an upper
// bound for [w]_{A_q} or [w^p]_{A_q} respectively.
double corollary_constant(double q_muck, const BellmanParams& params,
                          CorollaryVariant variant);

}  // namespace dyadic
