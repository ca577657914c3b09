#include "dyadic/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dyadic/characteristics.hpp"
#include "dyadic/errors.hpp"
#include "dyadic/random.hpp"

namespace dyadic {
namespace {

constexpr std::size_t kMaxDetails = 256;

std::vector<std::pair<std::string, double>> describe(const BellmanParams& params) {
  return {{"p", params.p()},         {"delta", params.delta()},
          {"bigQ", params.bigQ()},   {"H", params.H()},
          {"eps", params.eps()},     {"s_minus", params.s_minus()}};
}

std::string node_name(NodeIndex node) {
  return "(" + std::to_string(node.level) + ", " + std::to_string(node.offset) + ")";
}

// Tracks the running minimum margin and its location.
struct WorstTracker {
  double margin = std::numeric_limits<double>::infinity();
  Location where;

  void offer(double m, const Location& at) {
    if (m < margin) {
      margin = m;
      where = at;
    }
  }
};

void finish(VerificationReport& report, const WorstTracker& worst) {
  report.margin = worst.margin;
  report.worst_case = worst.where;
  report.set_pass_from_margin();
}

DomainPoint upper_point(double x1, double delta, double p) {
  return {x1, std::pow(delta * x1, p)};
}

struct PairSample {
  DomainPoint minus;
  DomainPoint plus;
  DomainPoint center;
};

// One admissible pair for the midpoint and segment checks.
PairSample sample_pair(const BellmanParams& params, Rng& rng) {
  const double p = params.p();
  const double rh_span = std::pow(params.delta(), p) - 1.0;
  auto draw = [&] {
    const double x1 = rng.log_uniform(0.1, 10.0);
    return DomainPoint{x1, std::pow(x1, p) * (1.0 + rng.uniform() * rh_span)};
  };
  for (std::size_t attempt = 0; attempt < kMaxRejections; ++attempt) {
    const DomainPoint a = draw();
    const DomainPoint b = draw();
    const DomainPoint x = midpoint(a, b);
    if (!in_omega(x, params.delta(), p)) continue;
    if (x.x1 > params.bigQ() * a.x1 || x.x1 > params.bigQ() * b.x1) continue;
    return a.x1 <= b.x1 ? PairSample{a, b, x} : PairSample{b, a, x};
  }
  throw Error(ErrorCode::SamplerExhausted, "trials",
              "no admissible pair after " + std::to_string(kMaxRejections) +
                  " rejections");
}

// Largest x2^{1/p}/x1 over kSegmentSamples equally spaced points of the
// segment; returns NaN if a point leaves Omega_eps on the lower side.
double segment_max_ratio(const PairSample& s, const BellmanParams& params) {
  const double p = params.p();
  double best = 0.0;
  for (int k = 0; k < kSegmentSamples; ++k) {
    const DomainPoint y = lerp(s.minus, s.plus, double(k) / (kSegmentSamples - 1));
    if (!(y.x1 > 0.0) || y.x2 < std::pow(y.x1, p) * (1.0 - kDomainSlack)) {
      return std::numeric_limits<double>::quiet_NaN();
    }
    best = std::max(best, std::pow(y.x2, 1.0 / p) / y.x1);
  }
  return best;
}

void add_detail(VerificationReport& report, DetailRecord record) {
  if (report.details.size() < kMaxDetails) report.details.push_back(std::move(record));
}

}  // namespace

BellmanParams measured_params(const DyadicWeight& w, double p) {
  const double rh = rh_characteristic(w, p).value;
  const double db = doubling_constant(w).value;
  return make_params(p, std::max(rh, kMinDelta), std::max(db, 2.0));
}

VerificationReport verify_theorem(const DyadicWeight& w, double p, double q,
                                  std::optional<double> delta,
                                  std::optional<double> bigQ) {
  const double rh = rh_characteristic(w, p).value;
  const double db = doubling_constant(w).value;
  const BellmanParams params =
      make_params(p, delta.value_or(std::max(rh, kMinDelta)),
                  bigQ.value_or(std::max(db, 2.0)));
  if (!params.admissible_q(q)) {
    throw Error(ErrorCode::ParameterDomain, "q",
                "q = " + std::to_string(q) + " is outside (1/s_minus, 0) = (" +
                    std::to_string(1.0 / params.s_minus()) + ", 0)");
  }

  VerificationReport report;
  report.check_name = "theorem";
  report.tolerance = 1e-9;
  report.params = describe(params);
  report.params.emplace_back("q", q);
  report.params.emplace_back("measured_rh", rh);
  report.params.emplace_back("measured_doubling", db);
  if (rh > params.delta() * (1.0 + 1e-12) || db > params.bigQ() * (1.0 + 1e-12)) {
    report.notes.push_back(
        "premise violated: measured characteristics exceed delta or bigQ");
  }

  const auto first = power_averages(w, 1.0);
  const auto pth = power_averages(w, p);
  const auto qth = power_averages(w, q);
  WorstTracker worst;
  for (std::size_t k = 0; k < w.node_count(); ++k) {
    const NodeIndex node = NodeIndex::from_flat(k);
    const DomainPoint x{first.values()[k], pth.values()[k]};
    if (!in_omega(x, params.eps(), p)) {
      throw Error(ErrorCode::OutsideDomain, "node",
                  "node " + node_name(node) + " lies outside Omega_eps");
    }
    const double bound = b_max(x, q, params);
    const double measured = qth.values()[k];
    const double rel = (bound - measured) / bound;
    ++report.items_checked;
    if (rel < -report.tolerance) ++report.violations;
    worst.offer(rel, node);
    if (k == 0 || rel < -report.tolerance) {
      add_detail(report, {"node", node, measured, bound, bound - measured});
    }
  }
  finish(report, worst);
  return report;
}

VerificationReport verify_corollary(const DyadicWeight& w, double p,
                                    double q_muck, CorollaryVariant variant) {
  const BellmanParams params = measured_params(w, p);
  const double constant = corollary_constant(q_muck, params, variant);
  const Characteristic measured =
      variant == CorollaryVariant::W ? aq_characteristic(w, q_muck)
                                     : aq_characteristic(w.powered(p), q_muck);

  VerificationReport report;
  report.check_name =
      variant == CorollaryVariant::W ? "corollary_w" : "corollary_w_pow_p";
  report.params = describe(params);
  report.params.emplace_back("q_muck", q_muck);
  report.params.emplace_back("threshold", corollary_threshold(params, variant));
  report.tolerance = 1e-9 * constant;
  report.items_checked = 1;
  report.margin = constant - measured.value;
  report.worst_case = measured.argmax;
  report.details.push_back(
      {"aq_characteristic", measured.argmax, measured.value, constant, report.margin});
  report.set_pass_from_margin();
  report.violations = report.passed ? 0 : 1;
  return report;
}

VerificationReport hessian_scan(const BellmanParams& params, double q,
                                HessianGrid grid, double region_margin,
                                double rel_step) {
  if (grid.nx < 8 || grid.ny < 8) {
    throw Error(ErrorCode::ParameterDomain, "grid",
                "hessian grid needs at least 8 x 8 points");
  }
  if (!(region_margin > 0.0) || !(region_margin < 0.5)) {
    throw Error(ErrorCode::ParameterDomain, "region_margin",
                "region_margin must lie in (0, 0.5)");
  }
  if (!(rel_step > 0.0) || !(rel_step < 1e-2)) {
    throw Error(ErrorCode::ParameterDomain, "rel_step",
                "finite-difference step must lie in (0, 1e-2)");
  }
  if (!params.admissible_q(q)) {
    throw Error(ErrorCode::ParameterDomain, "q", "q outside (1/s_minus, 0)");
  }

  const double p = params.p();
  const double span = std::pow(params.eps(), p) - 1.0;
  VerificationReport report;
  report.check_name = "hessian_scan";
  report.tolerance = 1e-6;
  report.params = describe(params);
  report.params.emplace_back("q", q);
  report.params.emplace_back("region_margin", region_margin);
  report.params.emplace_back("rel_step", rel_step);

  WorstTracker worst;
  for (int i = 0; i < grid.nx; ++i) {
    const double x1 = 0.5 + 1.5 * i / (grid.nx - 1);
    for (int j = 0; j < grid.ny; ++j) {
      const double t =
          region_margin + (1.0 - 2.0 * region_margin) * j / (grid.ny - 1);
      const DomainPoint x{x1, std::pow(x1, p) * (1.0 + t * span)};
      const double h1 = rel_step * x.x1;
      const double h2 = rel_step * x.x2;
      const auto g1p = b_max_gradient({x.x1 + h1, x.x2}, q, params);
      const auto g1m = b_max_gradient({x.x1 - h1, x.x2}, q, params);
      const auto g2p = b_max_gradient({x.x1, x.x2 + h2}, q, params);
      const auto g2m = b_max_gradient({x.x1, x.x2 - h2}, q, params);
      const double a = (g1p[0] - g1m[0]) / (2 * h1);
      const double d = (g2p[1] - g2m[1]) / (2 * h2);
      const double m = ((g2p[0] - g2m[0]) / (2 * h2) + (g1p[1] - g1m[1]) / (2 * h1)) / 2;
      const double lambda_max = (a + d) / 2 + std::hypot((a - d) / 2, m);
      const double value = b_max(x, q, params);
      const double scaled = lambda_max / std::abs(value);
      ++report.items_checked;
      if (-scaled < -report.tolerance) {
        ++report.violations;
        add_detail(report, {"eigenvalue", x, lambda_max, 0.0, -scaled});
      }
      worst.offer(-scaled, x);
    }
  }
  finish(report, worst);
  return report;
}

VerificationReport midpoint_concavity(const BellmanParams& params, double q,
                                      std::size_t trials, std::uint64_t seed) {
  if (trials < 1) {
    throw Error(ErrorCode::ParameterDomain, "trials", "trials must be >= 1");
  }
  if (!params.admissible_q(q)) {
    throw Error(ErrorCode::ParameterDomain, "q", "q outside (1/s_minus, 0)");
  }
  VerificationReport report;
  report.check_name = "midpoint_concavity";
  report.tolerance = 1e-9;
  report.params = describe(params);
  report.params.emplace_back("q", q);
  report.seed = seed;
  report.generator = Rng::kGeneratorName;
  report.notes.push_back(
      "pairs drawn from the necessary conditions x in Omega'_delta, "
      "x1 <= bigQ x1^{+-}; a superset of pairs realised by weights");

  WorstTracker worst;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    Rng rng = trial_rng(seed, trial);
    const PairSample s = sample_pair(params, rng);
    const PointPair where{s.minus, s.plus};
    ++report.items_checked;
    const double max_ratio = segment_max_ratio(s, params);
    if (!(max_ratio <= params.eps() * (1.0 + kDomainSlack))) {
      ++report.violations;
      add_detail(report, {"segment_outside_omega_eps", where, max_ratio,
                          params.eps(), -std::numeric_limits<double>::infinity()});
      worst.offer(-std::numeric_limits<double>::infinity(), where);
      continue;
    }
    const double center = b_max(s.center, q, params);
    const double ends = (b_max(s.minus, q, params) + b_max(s.plus, q, params)) / 2;
    const double rel = (center - ends) / std::abs(center);
    if (rel < -report.tolerance) {
      ++report.violations;
      add_detail(report, {"midpoint", where, ends, center, rel});
    }
    worst.offer(rel, where);
  }
  finish(report, worst);
  return report;
}

double upper_chord_max(const BellmanParams& params, double factor) {
  const double p = params.p();
  const DomainPoint a = upper_point(1.0, params.delta(), p);
  const DomainPoint b = upper_point(factor, params.delta(), p);
  constexpr int kSamples = 1 << 16;
  double best = 0.0;
  for (int k = 0; k <= kSamples; ++k) {
    const DomainPoint y = lerp(a, b, double(k) / kSamples);
    best = std::max(best, std::pow(y.x2, 1.0 / p) / y.x1);
  }
  return best;
}

VerificationReport segment_containment(const BellmanParams& params,
                                       std::size_t trials, std::uint64_t seed) {
  if (trials < 1) {
    throw Error(ErrorCode::ParameterDomain, "trials", "trials must be >= 1");
  }
  const double eps = params.eps();
  VerificationReport report;
  report.check_name = "segment_containment";
  report.tolerance = 1e-9 * eps;
  report.params = describe(params);
  report.seed = seed;
  report.generator = Rng::kGeneratorName;
  report.notes.push_back(
      "pairs drawn from the necessary conditions x in Omega'_delta, "
      "x1 <= bigQ x1^{+-}; a superset of pairs realised by weights");

  WorstTracker worst;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    Rng rng = trial_rng(seed, trial);
    const PairSample s = sample_pair(params, rng);
    const PointPair where{s.minus, s.plus};
    ++report.items_checked;
    const double max_ratio = segment_max_ratio(s, params);
    const double margin = std::isnan(max_ratio)
                              ? -std::numeric_limits<double>::infinity()
                              : eps - max_ratio;
    if (margin < -report.tolerance) {
      ++report.violations;
      add_detail(report, {"segment", where, max_ratio, eps, margin});
    }
    worst.offer(margin, where);
  }

  // Case 1: x- and x on the upper boundary with x1 = bigQ x1^-.
  // Case 2: x and x+ on the upper boundary with x1^+ = 2 x1.
  const double p = params.p();
  const std::pair<const char*, double> cases[] = {{"case1_extremal", params.bigQ()},
                                                  {"case2_extremal", 2.0}};
  for (std::size_t i = 0; i < std::size(cases); ++i) {
    const auto& [label, factor] = cases[i];
    const double max_ratio = upper_chord_max(params, factor);
    const PointPair where{upper_point(1.0, params.delta(), p),
                          upper_point(factor, params.delta(), p)};
    ++report.items_checked;
    const double margin = eps - max_ratio;
    if (margin < -report.tolerance) ++report.violations;
    report.details.insert(report.details.begin() + static_cast<std::ptrdiff_t>(i),
                          DetailRecord{label, where, max_ratio, eps, margin});
    worst.offer(margin, where);
  }
  finish(report, worst);
  return report;
}

VerificationReport induction_chain(const DyadicWeight& w, double p, double q,
                                   const BellmanParams& params) {
  if (p != params.p()) {
    throw Error(ErrorCode::ParameterDomain, "p", "p differs from params.p()");
  }
  if (!params.admissible_q(q)) {
    throw Error(ErrorCode::ParameterDomain, "q", "q outside (1/s_minus, 0)");
  }
  const auto first = power_averages(w, 1.0);
  const auto pth = power_averages(w, p);
  const auto qth = power_averages(w, q);

  VerificationReport report;
  report.check_name = "induction_chain";
  report.tolerance = 1e-12;
  report.params = describe(params);
  report.params.emplace_back("q", q);

  std::vector<double> sums;
  for (int level = 0; level <= w.depth(); ++level) {
    const auto xs = first.level(level);
    const auto ys = pth.level(level);
    double sum = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const DomainPoint x{xs[i], ys[i]};
      if (!in_omega(x, params.eps(), p)) {
        throw Error(ErrorCode::OutsideDomain, "node",
                    "node " + node_name({level, static_cast<std::int64_t>(i)}) +
                        " lies outside Omega_eps; delta or bigQ underestimated");
      }
      sum += b_max(x, q, params);
    }
    sums.push_back(sum / static_cast<double>(xs.size()));
    report.details.push_back(
        {"S(" + std::to_string(level) + ")", NodeIndex{level, 0}, sums.back(), 0.0, 0.0});
  }

  WorstTracker worst;
  const double scale = sums.front();
  for (std::size_t n = 0; n + 1 < sums.size(); ++n) {
    const double drop = (sums[n] - sums[n + 1]) / scale;
    report.details[n + 1].bound = sums[n];
    report.details[n + 1].margin = drop;
    ++report.items_checked;
    if (drop < -report.tolerance) ++report.violations;
    worst.offer(drop, NodeIndex{static_cast<int>(n + 1), 0});
  }
  if (sums.size() == 1) worst.offer(0.0, NodeIndex{});

  // The leaves sit on the lower boundary, where b_max = x1^q exactly.
  const double target = qth.root();
  const double terminal_error = std::abs(sums.back() - target) / target;
  report.details.push_back({"terminal", NodeIndex{w.depth(), 0}, sums.back(), target,
                            -terminal_error});
  ++report.items_checked;
  if (terminal_error > 1e-9) {
    ++report.violations;
    worst.offer(-terminal_error, NodeIndex{w.depth(), 0});
  }
  finish(report, worst);
  return report;
}

}  // namespace dyadic
