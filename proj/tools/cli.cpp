#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <exception>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dyadic/bellman.hpp"
#include "dyadic/characteristics.hpp"
#include "dyadic/errors.hpp"
#include "dyadic/json.hpp"
#include "dyadic/search.hpp"
#include "dyadic/verifier.hpp"
#include "dyadic/weight_io.hpp"

namespace dyadic::cli {
namespace {

using nlohmann::json;

constexpr double kHessianRegionMargin = 0.02;
constexpr int kDefaultGrid = 64;
constexpr std::int64_t kDefaultTrials = 10'000;

// Missing required flag; reported as a usage error.
[[noreturn]] void missing(const char* flag) {
  throw Error(ErrorCode::ParameterDomain, flag, "required for this subcommand");
}

template <typename T>
T need(const std::optional<T>& value, const char* flag) {
  if (!value) missing(flag);
  return *value;
}

std::string g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

void emit(const RunConfig& config, std::ostream& out, const std::string& text) {
  out << text;
  if (config.output_path) write_file_atomic(*config.output_path, text);
}

std::string format_or(const RunConfig& config, const char* fallback) {
  const std::string f = config.format.empty() ? fallback : config.format;
  if (f != "json" && f != "csv") {
    throw Error(ErrorCode::ParameterDomain, "--format", "must be json or csv");
  }
  return f;
}

DyadicWeight load_weight(const RunConfig& config) {
  return read_weight_file(need(config.input_path, "--input"));
}

int analyze(const RunConfig& config, std::ostream& out) {
  const DyadicWeight w = load_weight(config);
  const WeightProfile prof =
      profile(w, need(config.p, "--p"), need(config.q_muck, "--q-muck"));
  json doc = prof;
  doc["depth"] = w.depth();
  emit(config, out, dump(doc));
  return kOk;
}

int bound(const RunConfig& config, std::ostream& out) {
  const BellmanParams params = make_params(
      need(config.p, "--p"), need(config.delta, "--delta"), need(config.bigQ, "--bigQ"));
  const DomainPoint x{need(config.x1, "--x1"), need(config.x2, "--x2")};
  const BoundForms forms = b_max_forms(x, need(config.q, "--q"), params);
  const json doc = {{"H", params.H()},
                    {"eps", params.eps()},
                    {"s_minus", params.s_minus()},
                    {"r_minus", forms.r_minus},
                    {"b_max_form1", forms.form1},
                    {"b_max_form2", forms.form2}};
  emit(config, out, dump(doc));
  return kOk;
}

int verify(const RunConfig& config, std::ostream& out) {
  const DyadicWeight w = load_weight(config);
  const double p = need(config.p, "--p");
  const double q = need(config.q, "--q");
  std::vector<VerificationReport> reports;
  reports.push_back(verify_theorem(w, p, q, config.delta, config.bigQ));

  const BellmanParams measured = measured_params(w, p);
  const BellmanParams params = make_params(p, config.delta.value_or(measured.delta()),
                                           config.bigQ.value_or(measured.bigQ()));
  json skipped = json::array();
  if (config.q_muck) {
    for (const auto variant : {CorollaryVariant::W, CorollaryVariant::WPowP}) {
      const double threshold = corollary_threshold(measured, variant);
      if (*config.q_muck > threshold) {
        reports.push_back(verify_corollary(w, p, *config.q_muck, variant));
      } else {
        skipped.push_back({{"check_name", variant == CorollaryVariant::W
                                              ? "corollary_w"
                                              : "corollary_w_pow_p"},
                           {"reason", "q_muck must exceed " + g17(threshold)}});
      }
    }
  }
  reports.push_back(induction_chain(w, p, q, params));

  bool passed = true;
  for (const auto& r : reports) passed = passed && r.passed;
  json doc = {{"passed", passed}, {"reports", reports}};
  if (!skipped.empty()) doc["skipped"] = skipped;
  emit(config, out, dump(doc));
  return passed ? kOk : kCheckFailed;
}

int scan(const RunConfig& config, std::ostream& out) {
  const BellmanParams params = make_params(
      need(config.p, "--p"), need(config.delta, "--delta"), need(config.bigQ, "--bigQ"));
  const double q = need(config.q, "--q");
  const int nx = config.nx.value_or(kDefaultGrid);
  const int ny = config.ny.value_or(kDefaultGrid);
  if (nx < 2) throw Error(ErrorCode::ParameterDomain, "--nx", "must be >= 2");
  if (ny < 2) throw Error(ErrorCode::ParameterDomain, "--ny", "must be >= 2");
  const std::string format = format_or(config, "csv");

  const double p = params.p();
  const double span = std::pow(params.eps(), p) - 1.0;
  std::string csv = "x1,x2,r_minus,b_max\n";
  json rows = json::array();
  for (int i = 0; i < nx; ++i) {
    const double x1 = 0.5 + 1.5 * i / (nx - 1);
    for (int j = 0; j < ny; ++j) {
      const double t = double(j) / (ny - 1);
      const DomainPoint x{x1, std::pow(x1, p) * (1.0 + t * span)};
      const BoundForms forms = b_max_forms(x, q, params);
      if (format == "csv") {
        csv += g17(x.x1) + "," + g17(x.x2) + "," + g17(forms.r_minus) + "," +
               g17(forms.form1) + "\n";
      } else {
        rows.push_back({{"x1", x.x1}, {"x2", x.x2}, {"r_minus", forms.r_minus},
                        {"b_max", forms.form1}});
      }
    }
  }
  emit(config, out, format == "csv" ? csv : dump(json{{"params", params}, {"rows", rows}}));
  return kOk;
}

int concavity(const RunConfig& config, std::ostream& out) {
  const BellmanParams params = make_params(
      need(config.p, "--p"), need(config.delta, "--delta"), need(config.bigQ, "--bigQ"));
  const double q = need(config.q, "--q");
  const std::int64_t trials = config.trials.value_or(kDefaultTrials);
  if (trials < 1) throw Error(ErrorCode::ParameterDomain, "--trials", "must be >= 1");
  const HessianGrid grid{config.nx.value_or(kDefaultGrid), config.ny.value_or(kDefaultGrid)};

  std::vector<VerificationReport> reports;
  reports.push_back(hessian_scan(params, q, grid, kHessianRegionMargin));
  reports.push_back(midpoint_concavity(params, q, static_cast<std::size_t>(trials), config.seed));
  reports.push_back(segment_containment(params, static_cast<std::size_t>(trials), config.seed));
  bool passed = true;
  for (const auto& r : reports) passed = passed && r.passed;
  emit(config, out, dump(json{{"passed", passed}, {"reports", reports}}));
  return passed ? kOk : kCheckFailed;
}

int search(const RunConfig& config, std::ostream& out) {
  SearchConfig sc;
  sc.depth = config.depth.value_or(sc.depth);
  sc.p = need(config.p, "--p");
  sc.q = need(config.q, "--q");
  sc.delta_cap = need(config.delta, "--delta");
  sc.q_cap = need(config.bigQ, "--bigQ");
  sc.iterations = config.iterations.value_or(sc.iterations);
  sc.seed = config.seed;
  if (config.q_muck) sc.q_muck = *config.q_muck;

  const SearchResult result = local_search(sc);
  const json doc = {{"config", sc}, {"result", result}};
  emit(config, out, dump(doc));

  std::optional<std::string> weight_path = config.weight_output_path;
  if (!weight_path && config.output_path) weight_path = *config.output_path + ".weight.txt";
  if (weight_path) write_file_atomic(*weight_path, format_weight_text(result.best_weight));
  return result.best_ratio <= 1.0 + 1e-9 ? kOk : kCheckFailed;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    switch (config.subcommand) {
      case Subcommand::Analyze: return analyze(config, out);
      case Subcommand::Bound: return bound(config, out);
      case Subcommand::Verify: return verify(config, out);
      case Subcommand::Scan: return scan(config, out);
      case Subcommand::Concavity: return concavity(config, out);
      case Subcommand::Search: return search(config, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.field() << ": " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dyadic Reverse Hölder / Muckenhoupt characteristics and Bellman bounds"};
  app.require_subcommand(1);
  RunConfig config;

  struct Spec {
    const char* name;
    Subcommand which;
    const char* help;
  };
  const Spec specs[] = {
      {"analyze", Subcommand::Analyze, "Measure RH_p, A_q and doubling characteristics"},
      {"bound", Subcommand::Bound, "Evaluate the Bellman bound at one point"},
      {"verify", Subcommand::Verify, "Check the bound, corollary and induction chain on a weight"},
      {"scan", Subcommand::Scan, "Tabulate r_minus and the bound over Omega_eps"},
      {"concavity", Subcommand::Concavity, "Hessian, midpoint and segment checks"},
      {"search", Subcommand::Search, "Hill-climb for weights close to the bound"},
  };
  for (const auto& spec : specs) {
    CLI::App* sub = app.add_subcommand(spec.name, spec.help);
    sub->callback([&config, which = spec.which] { config.subcommand = which; });
    sub->add_option("--input", config.input_path, "Weight file (text or JSON)");
    sub->add_option("--output", config.output_path, "Also write the result here");
    sub->add_option("--weight-output", config.weight_output_path,
                    "search: best weight file (default <output>.weight.txt)");
    sub->add_option("--format", config.format, "json or csv");
    sub->add_option("--p", config.p, "Reverse Hölder exponent p > 1");
    sub->add_option("--q", config.q, "Negative exponent of the bound");
    sub->add_option("--q-muck", config.q_muck, "Muckenhoupt index q > 1");
    sub->add_option("--delta", config.delta, "Reverse Hölder constant (> 1)");
    sub->add_option("--bigQ", config.bigQ, "Doubling constant (>= 2)");
    sub->add_option("--x1", config.x1, "<w>");
    sub->add_option("--x2", config.x2, "<w^p>");
    sub->add_option("--nx", config.nx, "Grid points in x1");
    sub->add_option("--ny", config.ny, "Grid points across the domain");
    sub->add_option("--trials", config.trials, "Random trials");
    sub->add_option("--seed", config.seed, "Random seed (default 0)");
    sub->add_option("--depth", config.depth, "Tree depth for search");
    sub->add_option("--iterations", config.iterations, "Search iterations");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return run(config, out, err);
}

}  // namespace dyadic::cli
