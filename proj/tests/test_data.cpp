#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "riparian/data.hpp"
#include "riparian/sampler.hpp"
#include "test_support.hpp"

using namespace riparian;
using riparian::testing::q;
using riparian::testing::qv;

namespace {

ErrorCode parse_code(std::string_view text, DocumentFormat format) {
  try {
    parse_problem(text, format);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::MixedNetworks;
}

constexpr std::string_view kLineCsv =
    "# four farms on one canal\n"
    "id,name,successor,inflow\n"
    "1,A,2,12\n"
    "2,B,3,4\n"
    "3,C,4,0\n"
    "4,D,,10\n";

}  // namespace

TEST_CASE("CSV problem") {
  const auto d = parse_problem(kLineCsv, DocumentFormat::Csv);
  CHECK(d.network.is_linear());
  CHECK(d.inflows == qv({"12", "4", "0", "10"}));
  CHECK_FALSE(d.withdrawals);
  CHECK(d.provenance == std::vector<std::string>{"four farms on one canal"});
  CHECK(d.network.label(2) == "C");
}

TEST_CASE("CSV rows may come in any order and with CRLF endings") {
  const auto d = parse_problem(
      "id,name,successor,inflow,withdrawal\r\n3,C,,1/3,1\r\n1,A,3,16.8,2\r\n2,B,3,0,0\r\n",
      DocumentFormat::Csv);
  CHECK(d.network.topology() == Topology::Tree);
  CHECK(d.inflows(0) == q("84/5"));
  CHECK(d.inflows(2) == q("1/3"));
  REQUIRE(d.withdrawals);
  CHECK(*d.withdrawals == qv({"2", "0", "1"}));
}

TEST_CASE("JSON problem") {
  const auto d = parse_problem(R"({
    "agents": [
      {"id": 1, "name": "A", "successor": 2, "inflow": "16.8"},
      {"id": 2, "name": "B", "successor": 3, "inflow": 4},
      {"id": 3, "name": "C", "successor": null, "inflow": 0.5}
    ],
    "provenance": ["made up"]
  })",
                               DocumentFormat::Json);
  CHECK(d.inflows == qv({"16.8", "4", "1/2"}));
  CHECK(d.provenance == std::vector<std::string>{"made up"});
  CHECK(d.network.is_linear());
}

TEST_CASE("malformed documents") {
  CHECK(parse_code("id,name,successor,inflow\n", DocumentFormat::Csv) == ErrorCode::TooFewAgents);
  CHECK(parse_code(R"({"agents": []})", DocumentFormat::Json) == ErrorCode::TooFewAgents);
  CHECK(parse_code("", DocumentFormat::Csv) == ErrorCode::ParseError);
  CHECK(parse_code("id,name,inflow\n1,A,3\n", DocumentFormat::Csv) == ErrorCode::ParseError);
  CHECK(parse_code("id,name,successor,inflow\n1,A,2,-3\n2,B,3,1\n3,C,,1\n", DocumentFormat::Csv) ==
        ErrorCode::ParseError);
  CHECK(parse_code("id,name,successor,inflow\n1,A,2,3\n2,B,3,1\n4,C,,1\n", DocumentFormat::Csv) ==
        ErrorCode::ParseError);
  CHECK(parse_code("id,name,successor,inflow\n1,A,2,3\n2,B,1,1\n3,C,,1\n", DocumentFormat::Csv) ==
        ErrorCode::Cycle);
  CHECK(parse_code("id,name,successor,inflow\n1,A,,3\n2,B,3,1\n3,C,,1\n", DocumentFormat::Csv) ==
        ErrorCode::MultipleSinks);
  CHECK(parse_code("id,name,successor,inflow\n1,A,2\n", DocumentFormat::Csv) == ErrorCode::ParseError);
  CHECK(parse_code("{", DocumentFormat::Json) == ErrorCode::ParseError);
  CHECK(parse_code(R"({"agents": [{"id": 1, "name": "A", "inflow": "x"}]})", DocumentFormat::Json) ==
        ErrorCode::ParseError);
  CHECK(parse_code(R"({"agents": [
      {"id": 1, "name": "A", "successor": 2, "inflow": 1, "withdrawal": 1},
      {"id": 2, "name": "B", "successor": 3, "inflow": 1},
      {"id": 3, "name": "C", "inflow": 1}]})",
                   DocumentFormat::Json) == ErrorCode::ParseError);

  try {
    parse_problem("id,name,successor,inflow\n1,A,2,3\n2,B,3,x\n3,C,,1\n", DocumentFormat::Csv);
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("the Nile dataset") {
  const auto nile = nile_dataset();
  CHECK(nile.inflows.sum() == q("103.9"));
  REQUIRE(nile.withdrawals);
  CHECK(nile.withdrawals->sum() == q("121.66"));
  CHECK(nile.network.label(nile.network.sink()) == "Egypt");
  CHECK_FALSE(nile.provenance.empty());
}

TEST_CASE("emit then parse is the identity") {
  const auto nile = nile_dataset();
  CHECK(parse_problem(emit_problem(nile, DocumentFormat::Csv), DocumentFormat::Csv) == nile);
  CHECK(parse_problem(emit_problem(nile, DocumentFormat::Json), DocumentFormat::Json) == nile);

  ProblemSampler sampler({.seed = 31});
  for (int trial = 0; trial < 100; ++trial) {
    const Problem p = sampler.draw_problem();
    BasinDataset d{p.network(), p.inflows(), std::nullopt, {}};
    if (sampler.draw_bernoulli(q("1/2"))) d.withdrawals = sampler.draw_inflows(p.size());
    for (const auto format : {DocumentFormat::Csv, DocumentFormat::Json}) {
      CHECK(parse_problem(emit_problem(d, format), format) == d);
    }
  }
}

TEST_CASE("loading from disk picks the format") {
  const auto dir = std::filesystem::temp_directory_path() / "riparian-test-data";
  std::filesystem::create_directories(dir);
  const auto nile = nile_dataset();
  {
    std::ofstream(dir / "nile.csv") << emit_problem(nile, DocumentFormat::Csv);
    std::ofstream(dir / "nile.json") << emit_problem(nile, DocumentFormat::Json);
    std::ofstream(dir / "nile.txt") << emit_problem(nile, DocumentFormat::Json);
  }
  CHECK(load_problem(dir / "nile.csv") == nile);
  CHECK(load_problem(dir / "nile.json") == nile);
  CHECK(load_problem(dir / "nile.txt") == nile);
  CHECK_THROWS_AS(load_problem(dir / "missing.csv"), Error);
  std::filesystem::remove_all(dir);
}

TEST_CASE("allocation tables") {
  const auto line = RiverNetwork::line(3);
  const std::vector<NamedAllocation> columns{{"e", qv({"12.5", "1/3", "0"})},
                                             {"x", qv({"1", "2", "9.875"})}};
  CHECK(emit_table(line, columns, TableFormat::Csv, 0) == "agent,e,x\n1,13,1\n2,0,2\n3,0,10\n");
  CHECK(emit_table(line, columns, TableFormat::Csv) ==
        "agent,e,x\n1,12.50,1.00\n2,0.33,2.00\n3,0.00,9.88\n");
  CHECK(emit_table(line, columns, TableFormat::Text) ==
        "agent      e     x\n"
        "1      12.50  1.00\n"
        "2       0.33  2.00\n"
        "3       0.00  9.88\n");

  const auto doc = nlohmann::json::parse(emit_table(line, columns, TableFormat::Json));
  CHECK(doc["columns"][0]["values"][1] == "1/3");
  CHECK(doc["columns"][1]["values"][2] == "9.875");
  CHECK(doc["agents"][0] == "1");

  const std::vector<NamedAllocation> wrong{{"x", qv({"1", "2"})}};
  try {
    emit_table(line, wrong, TableFormat::Text);
    FAIL("expected MixedNetworks");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MixedNetworks);
  }
  CHECK(parse_table_format("json") == TableFormat::Json);
  CHECK_THROWS_AS(parse_table_format("xml"), Error);
}
