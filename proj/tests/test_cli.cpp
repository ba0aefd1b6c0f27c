#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "table_data.hpp"
#include "umbral/cli.hpp"

using namespace umbral::cli;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("table component 1 to row 359") {
  const Outcome o = invoke({"table", "--component", "1", "--max-row", "359", "--format", "csv"});
  CHECK(o.code == kExitOk);
  CHECK(o.out == "exponent_numerator,1A,2A,3A\n-1,-2,-2,-2\n119,2,2,2\n239,2,-2,2\n359,4,0,-2\n");
}

TEST_CASE("table component 7 to row 191") {
  const Outcome o = invoke({"table", "--component", "7", "--max-row", "191", "--format", "csv"});
  CHECK(o.code == kExitOk);
  CHECK(o.out == "exponent_numerator,1A,2A,3A\n71,2,-2,2\n191,4,0,-2\n");
}

TEST_CASE("table with max row -1 has a single row") {
  const Outcome o = invoke({"table", "--component", "1", "--max-row", "-1", "--format", "json"});
  CHECK(o.code == kExitOk);
  const auto doc = nlohmann::json::parse(o.out);
  CHECK(doc["rows"].size() == 1);
  CHECK(doc["rows"][0]["exponent_numerator"] == -1);
}

TEST_CASE("full reference range in both formats") {
  for (int component : {1, 7}) {
    const auto& rows = component == 1 ? std::vector<umbral::testdata::TableRowData>(
                                            umbral::testdata::kComponent1.begin(), umbral::testdata::kComponent1.end())
                                      : std::vector<umbral::testdata::TableRowData>(
                                            umbral::testdata::kComponent7.begin(), umbral::testdata::kComponent7.end());
    const std::string max_row = std::to_string(rows.back().exponent_numerator);
    const Outcome csv = invoke({"table", "--component", std::to_string(component), "--max-row", max_row});
    const Outcome json =
        invoke({"table", "--component", std::to_string(component), "--max-row", max_row, "--format", "json"});
    REQUIRE(csv.code == kExitOk);
    REQUIRE(json.code == kExitOk);
    const auto cells = csv_rows(csv.out);
    const auto doc = nlohmann::json::parse(json.out);
    CHECK(doc["grading_denominator"] == 120);
    CHECK(doc["component"] == component);
    REQUIRE(cells.size() == rows.size() + 1);
    REQUIRE(doc["rows"].size() == rows.size());
    const char* labels[] = {"1A", "2A", "3A"};
    for (std::size_t i = 0; i < rows.size(); ++i) {
      CHECK(std::stoll(cells[i + 1][0]) == rows[i].exponent_numerator);
      CHECK(doc["rows"][i]["exponent_numerator"] == rows[i].exponent_numerator);
      for (int k = 0; k < 3; ++k) {
        CHECK(std::stoi(cells[i + 1][k + 1]) == rows[i].values[k]);
        CHECK(doc["rows"][i]["values"][labels[k]] == rows[i].values[k]);
      }
    }
  }
}

TEST_CASE("output is deterministic") {
  const std::vector<std::string> args{"table", "--component", "7", "--max-row", "2000", "--format", "json"};
  CHECK(invoke(args).out == invoke(args).out);
  const std::vector<std::string> verify{"verify", "--suite", "all"};
  CHECK(invoke(verify).out == invoke(verify).out);
}

TEST_CASE("table budget and usage errors") {
  CHECK(invoke({"table", "--component", "1", "--max-row", std::to_string(kMaxRowBudget + 120)}).code == kExitUsage);
  CHECK(invoke({"table", "--component", "3", "--max-row", "359"}).code == kExitUsage);
  CHECK(invoke({"table", "--component", "7", "--max-row", "-1"}).code == kExitUsage);
  CHECK(invoke({"table", "--component", "1", "--max-row", "359", "--format", "xml"}).code == kExitUsage);
  CHECK(invoke({"table", "--component", "1"}).code == kExitUsage);
  const Outcome o = invoke({"table", "--component", "1", "--max-row", "99999999"});
  CHECK(o.code == kExitUsage);
  CHECK(o.err.find("budget") != std::string::npos);
}

TEST_CASE("verify suites") {
  const Outcome exact = invoke({"verify", "--suite", "exact", "--order", "25"});
  CHECK(exact.code == kExitOk);
  CHECK(exact.out.find("FAIL") == std::string::npos);
  const Outcome numeric = invoke({"verify", "--suite", "numeric", "--tol", "1e-6"});
  CHECK(numeric.code == kExitOk);
  CHECK(numeric.out.find("verified") != std::string::npos);
}

TEST_CASE("verify catches the injected corruption") {
  const Outcome o = invoke({"verify", "--suite", "exact", "--order", "25", "--inject-corruption"});
  CHECK(o.code == kExitFailure);
  CHECK(o.out.find("FAIL") != std::string::npos);
  CHECK(o.out.find("q^5") != std::string::npos);
}

TEST_CASE("verify rejects bad options") {
  CHECK(invoke({"verify", "--suite", "some"}).code == kExitUsage);
  CHECK(invoke({"verify", "--order", "0"}).code == kExitUsage);
  CHECK(invoke({"verify", "--tol", "-1"}).code == kExitUsage);
}

TEST_CASE("eval") {
  const Outcome o = invoke({"eval", "--class", "1A", "--r", "1", "--tau", "0+1i"});
  CHECK(o.code == kExitOk);
  CHECK(o.out.find("-2.10356676") != std::string::npos);
  CHECK(o.out.find("error") != std::string::npos);
  CHECK(invoke({"eval", "--class", "1A", "--r", "5", "--tau", "0+1i"}).code == kExitUsage);
  CHECK(invoke({"eval", "--class", "4A", "--r", "1", "--tau", "0+1i"}).code == kExitUsage);
  CHECK(invoke({"eval", "--class", "1A", "--r", "1", "--tau", "0-1i"}).code == kExitUsage);
  CHECK(invoke({"eval", "--class", "1A", "--r", "1", "--tau", "zzz"}).code == kExitUsage);
}

TEST_CASE("3A completion equals the plain value") {
  const Outcome plain = invoke({"eval", "--class", "3A", "--r", "7", "--tau", "0.1+0.9i"});
  const Outcome completed = invoke({"eval", "--class", "3A", "--r", "7", "--tau", "0.1+0.9i", "--completion"});
  REQUIRE(plain.code == kExitOk);
  REQUIRE(completed.code == kExitOk);
  const auto value_line = [](const std::string& s) {
    const auto at = s.find("\nvalue = ");
    return at == std::string::npos ? std::string() : s.substr(at + 1, s.find('\n', at + 1) - at - 1);
  };
  CHECK_FALSE(value_line(plain.out).empty());
  CHECK(value_line(plain.out) == value_line(completed.out));
  CHECK(completed.out.find("nonholomorphic = 0+0i") != std::string::npos);
}

TEST_CASE("help and unknown commands") {
  CHECK(invoke({"--help"}).code == kExitOk);
  CHECK(invoke({}).code == kExitUsage);
  CHECK(invoke({"frobnicate"}).code == kExitUsage);
}
