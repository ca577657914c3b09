#include "dyadic/weight_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>
#include <vector>

#include <nlohmann/json.hpp>

#include "dyadic/errors.hpp"

namespace dyadic {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

DyadicWeight parse_weight_text(std::string_view content) {
  std::vector<double> leaves;
  std::size_t line_no = 0;
  while (!content.empty()) {
    ++line_no;
    const auto eol = content.find('\n');
    std::string_view line = trim(content.substr(0, eol));
    content = eol == std::string_view::npos ? std::string_view{} : content.substr(eol + 1);
    if (line.empty()) continue;
    if (line.front() == '+') line.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), value);
    if (ec == std::errc::result_out_of_range) {
      throw Error(ErrorCode::NonFiniteValue, "leaves",
                  "line " + std::to_string(line_no) + ": value out of range");
    }
    if (ec != std::errc{} || ptr != line.data() + line.size()) {
      throw Error(ErrorCode::MalformedInput, "leaves",
                  "line " + std::to_string(line_no) + ": '" + std::string(line) +
                      "' is not a number");
    }
    leaves.push_back(value);
  }
  return DyadicWeight::build(std::move(leaves));
}

DyadicWeight parse_weight_json(std::string_view content) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(content);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::MalformedInput, "json", e.what());
  }
  if (!doc.is_object() || !doc.contains("leaves") || !doc["leaves"].is_array()) {
    throw Error(ErrorCode::MalformedInput, "leaves",
                "weight JSON needs an array field \"leaves\"");
  }
  std::vector<double> leaves;
  for (const auto& v : doc["leaves"]) {
    if (!v.is_number()) {
      throw Error(ErrorCode::MalformedInput, "leaves", "leaf is not a number");
    }
    leaves.push_back(v.get<double>());
  }
  DyadicWeight w = DyadicWeight::build(std::move(leaves));
  if (doc.contains("depth")) {
    if (!doc["depth"].is_number_integer() || doc["depth"].get<long long>() != w.depth()) {
      throw Error(ErrorCode::MalformedInput, "depth",
                  "\"depth\" does not match the number of leaves");
    }
  }
  return w;
}

DyadicWeight parse_weight(std::string_view content) {
  const std::string_view body = trim(content);
  if (!body.empty() && body.front() == '{') return parse_weight_json(body);
  return parse_weight_text(content);
}

DyadicWeight read_weight_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::Io, "input", "cannot open " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_weight(buf.str());
}

std::string format_weight_text(const DyadicWeight& w) {
  std::string out;
  for (double v : w.leaves()) {
    out += format_double(v);
    out += '\n';
  }
  return out;
}

std::string format_weight_json(const DyadicWeight& w) {
  nlohmann::json doc;
  doc["depth"] = w.depth();
  doc["leaves"] = std::vector<double>(w.leaves().begin(), w.leaves().end());
  return doc.dump(2) + "\n";
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "output", "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorCode::Io, "output", "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::Io, "output", "cannot rename onto " + path.string());
  }
}

}  // namespace dyadic
