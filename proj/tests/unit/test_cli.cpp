#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "chipfire/cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = chipfire::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / ("chipfire_test_" + name);
  std::ofstream(path) << body;
  return path.string();
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("period") {
    const std::string tri = temp_file("triangle.txt", "3 3\n0 1\n1 2\n0 2\n");
    const Result ok = run({"period", "--graph", tri, "--config", "2,2,0"});
    CHECK(ok.code == 0);
    CHECK(ok.out == "t0=0 T=2 activity=1/2\n");

    const Result bad = run({"period", "--graph", tri, "--config", "2,2"});
    CHECK(bad.code == 2);
    CHECK(bad.err == "error: config length 2 != 3 vertices\n");

    const std::string cfg = temp_file("config.txt", "2, 2,\n0\n");
    CHECK(run({"period", "--graph", tri, "--config", "@" + cfg}).out == "t0=0 T=2 activity=1/2\n");
    CHECK(run({"period", "--graph", "complete:3", "--config", "2,0,0"}).out == "t0=1 T=1 activity=0\n");
  }

  TEST_CASE("usage errors") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    const Result unknown = run({"period", "--graph", "complete:3", "--config", "1,1,1", "--bogus"});
    CHECK(unknown.code == 2);
    CHECK(unknown.err.rfind("error:", 0) == 0);
    CHECK(run({"period", "--graph", "/nonexistent/graph.txt", "--config", "1"}).code == 2);
    CHECK(run({"verify", "--claim", "theorem7"}).code == 2);
    CHECK(run({"verify", "--claim", "theorem2"}).code == 2);
    CHECK(run({"--help"}).code == 0);
  }

  TEST_CASE("simulate") {
    const Result r = run({"simulate", "--graph", "cycle:4", "--config", "2,1,1,0", "--rounds", "2"});
    CHECK(r.code == 0);
    CHECK(r.out == "0 2,1,1,0\n1 0,2,1,1\n2 1,0,2,1\n");
  }

  TEST_CASE("verify prints a parsable report and follows the exit codes") {
    const Result ok = run({"verify", "--claim", "theorem1", "--n-max", "4"});
    CHECK(ok.code == 0);
    const auto j = nlohmann::json::parse(ok.out);
    CHECK(j["claim"] == "theorem1");
    CHECK(j["failures"].empty());
    CHECK(j["pass"] == true);

    // C_5 carries compliant games with two firings per period; the
    // deprivation count cannot match for them.
    const Result falsified = run({"verify", "--claim", "lemmas", "--graph", "cycle:5"});
    CHECK(falsified.code == 1);
    CHECK(nlohmann::json::parse(falsified.out)["failure_count"].get<int>() > 0);

    const Result budget = run({"verify", "--claim", "conjecture1", "--graph", "complete:4", "--max-rounds", "1"});
    CHECK(budget.code == 3);
    CHECK(nlohmann::json::parse(budget.out)["incomplete"] == true);

    const Result t2 = run({"verify", "--claim", "theorem2", "--a", "2"});
    CHECK(t2.code == 0);
    const auto r = nlohmann::json::parse(t2.out);
    CHECK(r["a"] == 2);
    CHECK(r["range"] == nlohmann::json::array({5, 7}));
    CHECK(r["mode"] == "exhaustive");
    CHECK(r.contains("undefined_conjugates"));
  }

  TEST_CASE("assign") {
    const Result ok = run({"assign", "--graph", "cycle:4", "--config", "2,1,1,0"});
    CHECK(ok.code == 0);
    CHECK(nlohmann::json::parse(ok.out)["chips"].size() == 4);
    const Result rejected = run({"assign", "--graph", "complete:3", "--config", "2,2,0"});
    CHECK(rejected.code == 2);
    CHECK(rejected.err.find("not compliant") != std::string::npos);
  }

  TEST_CASE("staircase and enumerate") {
    const Result csv = run({"staircase", "--graph", "path:2", "--samples", "3", "--seed", "1"});
    CHECK(csv.code == 0);
    CHECK(csv.out.rfind("total,mean_chips,activity_min,activity_max,activity_mean,periods\n", 0) == 0);
    const std::string out = (std::filesystem::temp_directory_path() / "chipfire_test_stair.csv").string();
    CHECK(run({"staircase", "--graph", "path:2", "--samples", "3", "--out", out}).code == 0);
    CHECK(std::filesystem::file_size(out) == csv.out.size());

    const Result graphs = run({"enumerate", "--n", "4", "--dedup"});
    CHECK(graphs.code == 0);
    std::size_t headers = 0;
    std::istringstream lines(graphs.out);
    std::string line;
    bool expect_header = true;
    while (std::getline(lines, line)) {
      if (line.empty()) {
        expect_header = true;
      } else if (expect_header) {
        ++headers;
        expect_header = false;
      }
    }
    CHECK(headers == 6);
    CHECK(run({"enumerate", "--n", "9"}).code == 2);
  }
}
