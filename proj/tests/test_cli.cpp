#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "dyadic/bellman.hpp"

using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "dyadic_rh");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = dyadic::cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  std::filesystem::path path;
  TempDir() : path(std::filesystem::temp_directory_path() / "dyadic_cli_test") {
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name, const std::string& content) const {
    std::ofstream(path / name) << content;
    return (path / name).string();
  }
};

}  // namespace

TEST_CASE("analyze") {
  TempDir tmp;
  const auto input = tmp.file("two.txt", "1\n3\n");
  const auto r = cli({"analyze", "--input", input, "--p", "2", "--q-muck", "2"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["rh"]["value"].get<double>() == doctest::Approx(1.1180339887));
  CHECK(doc["aq"]["value"].get<double>() == doctest::Approx(4.0 / 3.0));
  CHECK(doc["doubling"]["value"].get<double>() == 2.0);
}

TEST_CASE("bound") {
  const auto r = cli({"bound", "--p", "2", "--delta", "1.2", "--bigQ", "2", "--q", "-0.5",
                      "--x1", "1", "--x2", "1"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["b_max_form1"].get<double>() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(doc["b_max_form2"].get<double>() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(doc["H"].get<double>() == 3.0);
  for (const char* key : {"eps", "s_minus", "r_minus"}) CHECK(doc.contains(key));
}

TEST_CASE("verify") {
  TempDir tmp;
  const auto flat = tmp.file("flat.txt", "2\n2\n2\n2\n");
  const auto r = cli({"verify", "--input", flat, "--p", "2", "--q", "-0.5", "--q-muck", "5"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["passed"].get<bool>());
  CHECK(doc["reports"].size() == 4);
  const json& theorem = doc["reports"][0];
  CHECK(theorem["check_name"] == "theorem");
  CHECK(std::abs(theorem["details"][0]["margin"].get<double>()) <= 1e-14);
  for (const char* key : {"check_name", "passed", "margin", "worst_case", "tolerance",
                          "params", "seed", "details"}) {
    CHECK(theorem.contains(key));
  }

  // q_muck between the two thresholds: only variant W runs.
  const auto two = tmp.file("two.json", R"({"depth": 1, "leaves": [1, 3]})");
  const auto partial = cli({"verify", "--input", two, "--p", "2", "--q", "-0.5", "--q-muck", "3"});
  REQUIRE(partial.code == 0);
  const json pdoc = json::parse(partial.out);
  CHECK(pdoc["skipped"].size() == 1);
  CHECK(pdoc["skipped"][0]["check_name"] == "corollary_w_pow_p");
}

TEST_CASE("verify rejects a weight outside Omega_eps for the given delta") {
  TempDir tmp;
  // Measured RH_2 is about 1.245, far above eps for delta = 1.001.
  const auto w = tmp.file("w.txt", "1\n1\n1\n4\n");
  const auto r = cli({"verify", "--input", w, "--p", "2", "--q", "-0.1", "--delta", "1.001",
                      "--bigQ", "2"});
  CHECK(r.code == 2);
  CHECK(r.err.find("node") != std::string::npos);
}

TEST_CASE("scan CSV round-trips through b_max") {
  TempDir tmp;
  const auto out = (tmp.path / "scan.csv").string();
  const auto r = cli({"scan", "--p", "2", "--q", "-0.5", "--delta", "1.2", "--bigQ", "2",
                      "--nx", "9", "--ny", "7", "--output", out});
  REQUIRE(r.code == 0);
  std::ifstream in(out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "x1,x2,r_minus,b_max");
  const auto params = dyadic::make_params(2.0, 1.2, 2.0);
  int rows = 0;
  while (std::getline(in, line)) {
    double x1, x2, r, b;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &x1, &x2, &r, &b) == 4);
    CHECK(std::abs(dyadic::b_max({x1, x2}, -0.5, params) - b) <= 1e-12 * b);
    ++rows;
  }
  CHECK(rows == 63);
  CHECK(r.out.rfind("x1,x2,r_minus,b_max\n", 0) == 0);

  const auto j = cli({"scan", "--p", "2", "--q", "-0.5", "--delta", "1.2", "--bigQ", "2",
                      "--nx", "3", "--ny", "3", "--format", "json"});
  REQUIRE(j.code == 0);
  CHECK(json::parse(j.out)["rows"].size() == 9);
}

TEST_CASE("concavity") {
  const auto r = cli({"concavity", "--p", "2", "--q", "-0.5", "--delta", "1.2", "--bigQ", "2",
                      "--nx", "16", "--ny", "16", "--trials", "500", "--seed", "9"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["passed"].get<bool>());
  CHECK(doc["reports"].size() == 3);
  CHECK(doc["reports"][1]["seed"] == 9);
}

TEST_CASE("search writes the best weight") {
  TempDir tmp;
  const auto out = (tmp.path / "search.json").string();
  const auto r = cli({"search", "--p", "2", "--q", "-0.5", "--delta", "1.2", "--bigQ", "2",
                      "--depth", "3", "--iterations", "200", "--seed", "5", "--output", out});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["result"]["best_ratio"].get<double>() <= 1.0);
  CHECK(std::filesystem::exists(out + ".weight.txt"));
  const auto again = cli({"search", "--p", "2", "--q", "-0.5", "--delta", "1.2", "--bigQ", "2",
                          "--depth", "3", "--iterations", "200", "--seed", "5"});
  CHECK(again.out == r.out);
}

TEST_CASE("usage errors exit 2 with a one-line diagnostic naming the field") {
  TempDir tmp;
  auto check_usage = [](const Result& r, const std::string& field) {
    CHECK(r.code == 2);
    CHECK(r.err.find(field) != std::string::npos);
    CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
  };
  check_usage(cli({"analyze", "--input", (tmp.path / "nope.txt").string(), "--p", "2",
                   "--q-muck", "2"}),
              "input");
  check_usage(cli({"analyze", "--input", tmp.file("bad.txt", "1\n2\n3\n"), "--p", "2",
                   "--q-muck", "2"}),
              "leaves");
  check_usage(cli({"bound", "--p", "2", "--delta", "1.2", "--bigQ", "2", "--q", "-0.5",
                   "--x1", "1"}),
              "--x2");
  check_usage(cli({"bound", "--p", "0.5", "--delta", "1.2", "--bigQ", "2", "--q", "-0.5",
                   "--x1", "1", "--x2", "1"}),
              "p");
  check_usage(cli({"bound", "--p", "2", "--delta", "1.2", "--bigQ", "2", "--q", "-5",
                   "--x1", "1", "--x2", "1"}),
              "q");
  CHECK(cli({}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"bound", "--p", "abc"}).code == 2);
}
