#pragma once

#include <nlohmann/json.hpp>

#include "dyadic/bellman.hpp"
#include "dyadic/characteristics.hpp"
#include "dyadic/search.hpp"
#include "dyadic/verifier.hpp"

// nlohmann::json conversions for the library's result types. Non-finite
// numbers serialize as null.
namespace dyadic {

void to_json(nlohmann::json& j, const NodeIndex& node);
void to_json(nlohmann::json& j, const DomainPoint& point);
void to_json(nlohmann::json& j, const Location& where);
void to_json(nlohmann::json& j, const Characteristic& c);
void to_json(nlohmann::json& j, const WeightProfile& profile);
void to_json(nlohmann::json& j, const BellmanParams& params);
void to_json(nlohmann::json& j, const DetailRecord& detail);
void to_json(nlohmann::json& j, const VerificationReport& report);
void to_json(nlohmann::json& j, const DyadicWeight& w);
void to_json(nlohmann::json& j, const SearchConfig& config);
void to_json(nlohmann::json& j, const SearchResult& result);

}  // namespace dyadic
