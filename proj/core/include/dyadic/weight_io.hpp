#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "dyadic/dyadic_tree.hpp"

namespace dyadic {

// Weight files come in two formats:
//   text: one strictly positive decimal number per line, 2^n lines
//         (blank lines and surrounding whitespace are ignored);
//   JSON: {"depth": n, "leaves": [2^n numbers]}.
// Content starting with '{' is parsed as JSON. Both reject NaN, Inf and
// non-positive entries.
DyadicWeight parse_weight_text(std::string_view content);
DyadicWeight parse_weight_json(std::string_view content);
DyadicWeight parse_weight(std::string_view content);
DyadicWeight read_weight_file(const std::filesystem::path& path);

// Text format with 17 significant digits per leaf.
std::string format_weight_text(const DyadicWeight& w);
std::string format_weight_json(const DyadicWeight& w);

// Writes to a temporary sibling and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace dyadic
