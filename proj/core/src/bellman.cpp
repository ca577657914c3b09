#include "dyadic/bellman.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "dyadic/errors.hpp"

namespace dyadic {
namespace {

constexpr double kUpperSnap = 0x1.0p-50;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void require_p(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw Error(ErrorCode::ParameterDomain, "p",
                "p must be a finite real > 1, got " + fmt(p));
  }
}

// log of the implicit left-hand side, accurate near u = 0.
double log_lhs(double u, double p) {
  return std::log1p(-p * u) / p - std::log1p(-u);
}

double log_lhs_derivative(double u, double p) {
  return u * (1.0 - p) / ((1.0 - p * u) * (1.0 - u));
}

// Safeguarded Newton on f(u) = log_lhs(u) - log t inside [lo, hi], where f
// changes sign. Falls back to bisection whenever the Newton step leaves the
// bracket or fails to halve the previous step.
double solve_bracketed(double lo, double hi, double log_t, double p,
                       const SolverOptions& options) {
  auto f = [&](double u) { return log_lhs(u, p) - log_t; };
  // Near u = 1/p the root is resolved only to a few ulps of u; a converged
  // Newton step of abs_tol can still leave many ulps, so keep stepping while
  // the residual shrinks.
  auto polish = [&](double x, double a, double b) {
    double fx = std::abs(f(x));
    for (int k = 0; k < 8 && fx > 0.0; ++k) {
      const double next = x - f(x) / log_lhs_derivative(x, p);
      if (!(next >= a && next <= b)) break;
      const double fn = std::abs(f(next));
      if (!(fn < fx)) break;
      x = next;
      fx = fn;
    }
    return x;
  };
  const bool increasing = f(lo) < 0.0;
  double x = lo + (hi - lo) / 2;
  double prev_step = hi - lo;
  for (int it = 0; it < options.max_iterations; ++it) {
    const double fx = f(x);
    if (fx == 0.0) return x;
    if ((fx < 0.0) == increasing) {
      lo = x;
    } else {
      hi = x;
    }
    const double scale = std::max(1.0, std::abs(x));
    const double df = log_lhs_derivative(x, p);
    double next = x - fx / df;
    const bool newton_ok = df != 0.0 && std::isfinite(next) && next > lo &&
                           next < hi && std::abs(next - x) < prev_step / 2;
    if (!newton_ok) next = lo + (hi - lo) / 2;
    prev_step = std::abs(next - x);
    if (newton_ok && prev_step <= options.abs_tol * scale) return polish(next, lo, hi);
    if (hi - lo <= options.abs_tol * std::max({1.0, std::abs(lo), std::abs(hi)})) {
      return std::abs(f(lo)) < std::abs(f(hi)) ? lo : hi;
    }
    x = next;
  }
  return x;
}

}  // namespace

double implicit_lhs(double u, double p) {
  return std::pow(1.0 - p * u, 1.0 / p) / (1.0 - u);
}

double u_branch(double t, double p, Branch branch, const SolverOptions& options) {
  require_p(p);
  if (!(t > 0.0) || !(t <= 1.0)) {
    throw Error(ErrorCode::ParameterDomain, "t",
                "t must lie in (0, 1], got " + fmt(t));
  }
  if (t == 1.0) return 0.0;
  const double log_t = std::log(t);

  double u = 0.0;
  if (branch == Branch::Plus) {
    u = solve_bracketed(0.0, 1.0 / p, log_t, p, options);
  } else {
    double lower = -1.0;
    while (log_lhs(lower, p) > log_t) {
      lower *= 2.0;
      if (lower < options.floor) {
        throw Error(ErrorCode::SolverRange, "t",
                    "t below solver range: u^- would fall under " +
                        fmt(options.floor) + " for t = " + fmt(t));
      }
    }
    u = solve_bracketed(lower, 0.0, log_t, p, options);
  }

  const double residual = std::abs(implicit_lhs(u, p) - t);
  // Change in the left side across a few ulps of u: the best any double u can do.
  const double ulp = std::nextafter(std::abs(u), HUGE_VAL) - std::abs(u);
  const double resolution = 4.0 * ulp * std::abs(t * log_lhs_derivative(u, p));
  if (!(residual <= options.residual_tol * std::max(1.0, t) + resolution)) {
    throw Error(ErrorCode::SolverRange, "t",
                "root solve did not converge for t = " + fmt(t) +
                    " (residual " + fmt(residual) + ")");
  }
  return u;
}

BellmanParams make_params(double p, double delta, double bigQ) {
  require_p(p);
  if (!(delta > 1.0) || !std::isfinite(delta)) {
    throw Error(ErrorCode::ParameterDomain, "delta",
                "delta must be a finite real > 1, got " + fmt(delta));
  }
  if (!(bigQ >= 2.0) || !std::isfinite(bigQ)) {
    throw Error(ErrorCode::ParameterDomain, "bigQ",
                "bigQ must be a finite real >= 2, got " + fmt(bigQ));
  }
  BellmanParams out;
  out.p_ = p;
  out.delta_ = delta;
  out.bigQ_ = bigQ;
  out.H_ = (std::pow(bigQ, p) - 1.0) / (bigQ - 1.0);
  out.eps_ = out.H_ / p *
             std::pow((p - 1.0) / (out.H_ - 1.0), (p - 1.0) / p) * delta;
  if (!(out.H_ > 1.0) || !(out.eps_ > 1.0) || !std::isfinite(out.eps_)) {
    throw Error(ErrorCode::ParameterDomain, "eps",
                "derived eps = " + fmt(out.eps_) + " is not > 1");
  }
  out.s_minus_ = u_branch(1.0 / out.eps_, p, Branch::Minus);
  out.s_plus_ = u_branch(1.0 / out.eps_, p, Branch::Plus);
  return out;
}

bool in_omega(const DomainPoint& point, double bound, double p) {
  if (!(point.x1 > 0.0) || !(point.x2 > 0.0) || !std::isfinite(point.x1) ||
      !std::isfinite(point.x2)) {
    return false;
  }
  const double lower = std::pow(point.x1, p);
  const double upper = std::pow(bound, p) * lower;
  return point.x2 >= lower * (1.0 - kDomainSlack) &&
         point.x2 <= upper * (1.0 + kDomainSlack);
}

double r_minus(const DomainPoint& point, const BellmanParams& params) {
  const double p = params.p();
  const double eps = params.eps();
  if (!in_omega(point, eps, p)) {
    throw Error(ErrorCode::OutsideDomain, "point",
                "(" + fmt(point.x1) + ", " + fmt(point.x2) +
                    ") is outside Omega_eps with eps = " + fmt(eps));
  }
  double t = std::pow(point.x2, 1.0 / p) / (eps * point.x1);
  // Boundary points within the slack map onto the boundary values.
  // u^- is sqrt-sensitive at t = 1 (the left side peaks there), so rounding
  // in x2^{1/p} on the upper boundary would otherwise show up as |r| ~ 1e-8.
  t = std::clamp(t, 1.0 / eps, 1.0);
  if (t >= 1.0 - kUpperSnap) return 0.0;
  return u_branch(t, p, Branch::Minus);
}

namespace {

void require_q(double q, const BellmanParams& params) {
  if (!params.admissible_q(q)) {
    throw Error(ErrorCode::ParameterDomain, "q",
                "q = " + fmt(q) + " is outside (1/s_minus, 0) = (" +
                    fmt(1.0 / params.s_minus()) + ", 0)");
  }
}

}  // namespace

BoundForms b_max_forms(const DomainPoint& point, double q,
                       const BellmanParams& params) {
  require_q(q, params);
  const double p = params.p();
  const double s = params.s_minus();
  BoundForms out;
  out.r_minus = r_minus(point, params);
  const double r = out.r_minus;
  const double common = (1.0 - q * r) / (1.0 - q * s);
  out.form1 = std::pow(point.x1, q) * common * std::pow((1.0 - s) / (1.0 - r), q);
  out.form2 = std::pow(point.x2, q / p) * common *
              std::pow((1.0 - p * s) / (1.0 - p * r), q / p);
  if (!(std::abs(out.form1 - out.form2) <= kFormTolerance * std::abs(out.form1))) {
    throw Error(ErrorCode::FormMismatch, "b_max",
                "bound forms disagree at (" + fmt(point.x1) + ", " +
                    fmt(point.x2) + "): " + fmt(out.form1) + " vs " +
                    fmt(out.form2));
  }
  return out;
}

double b_max(const DomainPoint& point, double q, const BellmanParams& params) {
  return b_max_forms(point, q, params).form1;
}

std::array<double, 2> b_max_gradient(const DomainPoint& point, double q,
                                     const BellmanParams& params) {
  const auto forms = b_max_forms(point, q, params);
  const double p = params.p();
  const double r = forms.r_minus;
  const double k = q * (1.0 - q) * (1.0 - p * r) / ((1.0 - q * r) * (1.0 - p));
  return {forms.form1 * (q - k) / point.x1, forms.form1 * k / (p * point.x2)};
}

double corollary_threshold(const BellmanParams& params, CorollaryVariant variant) {
  const double s = params.s_minus();
  return variant == CorollaryVariant::W ? 1.0 - s : 1.0 - params.p() * s;
}

double corollary_constant(double q_muck, const BellmanParams& params,
                          CorollaryVariant variant) {
  const double threshold = corollary_threshold(params, variant);
  if (!(q_muck > threshold) || !std::isfinite(q_muck)) {
    throw Error(ErrorCode::ParameterDomain, "q_muck",
                "q_muck = " + fmt(q_muck) + " must exceed " + fmt(threshold));
  }
  const double shift = variant == CorollaryVariant::W
                           ? params.s_minus()
                           : params.p() * params.s_minus();
  const double m = q_muck - 1.0;
  // (m / (m + shift))^m = exp(-m log1p(shift / m)), stable for large m.
  return std::exp(-m * std::log1p(shift / m));
}

}  // namespace dyadic
