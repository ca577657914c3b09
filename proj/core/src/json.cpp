#include "dyadic/json.hpp"

namespace dyadic {

void to_json(nlohmann::json& j, const NodeIndex& node) {
  j = {{"level", node.level}, {"offset", node.offset}};
}

void to_json(nlohmann::json& j, const DomainPoint& point) {
  j = {{"x1", point.x1}, {"x2", point.x2}};
}

void to_json(nlohmann::json& j, const Location& where) {
  struct Visitor {
    nlohmann::json& out;
    void operator()(std::monostate) const { out = nullptr; }
    void operator()(const NodeIndex& n) const { out = {{"node", n}}; }
    void operator()(const DomainPoint& x) const { out = {{"point", x}}; }
    void operator()(const PointPair& pair) const {
      out = {{"x_minus", pair.minus}, {"x_plus", pair.plus}};
    }
  };
  std::visit(Visitor{j}, where);
}

void to_json(nlohmann::json& j, const Characteristic& c) {
  j = {{"value", c.value}, {"argmax", c.argmax}};
}

void to_json(nlohmann::json& j, const WeightProfile& profile) {
  j = {{"p", profile.p},
       {"q_muck", profile.q_muck},
       {"rh", profile.rh},
       {"aq", profile.aq},
       {"doubling", profile.doubling}};
}

void to_json(nlohmann::json& j, const BellmanParams& params) {
  j = {{"p", params.p()},         {"delta", params.delta()},
       {"bigQ", params.bigQ()},   {"H", params.H()},
       {"eps", params.eps()},     {"s_minus", params.s_minus()},
       {"s_plus", params.s_plus()}};
}

void to_json(nlohmann::json& j, const DetailRecord& detail) {
  j = {{"label", detail.label},
       {"where", detail.where},
       {"measured", detail.measured},
       {"bound", detail.bound},
       {"margin", detail.margin}};
}

void to_json(nlohmann::json& j, const VerificationReport& report) {
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [name, value] : report.params) params[name] = value;
  j = {{"check_name", report.check_name},
       {"passed", report.passed},
       {"margin", report.margin},
       {"worst_case", report.worst_case},
       {"tolerance", report.tolerance},
       {"params", params},
       {"seed", report.seed ? nlohmann::json(*report.seed) : nlohmann::json(nullptr)},
       {"items_checked", report.items_checked},
       {"violations", report.violations},
       {"details", report.details}};
  if (!report.generator.empty()) j["generator"] = report.generator;
  if (!report.notes.empty()) j["notes"] = report.notes;
}

void to_json(nlohmann::json& j, const DyadicWeight& w) {
  j = {{"depth", w.depth()},
       {"leaves", std::vector<double>(w.leaves().begin(), w.leaves().end())}};
}

void to_json(nlohmann::json& j, const SearchConfig& config) {
  j = {{"depth", config.depth},         {"p", config.p},
       {"q", config.q},                 {"delta_cap", config.delta_cap},
       {"q_cap", config.q_cap},         {"iterations", config.iterations},
       {"step_scale", config.step_scale}, {"seed", config.seed}};
}

void to_json(nlohmann::json& j, const SearchResult& result) {
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& [it, ratio] : result.trace) trace.push_back({it, ratio});
  j = {{"best_ratio", result.best_ratio},
       {"best_weight", result.best_weight},
       {"measured_profile", result.measured_profile},
       {"trace", trace}};
}

}  // namespace dyadic
