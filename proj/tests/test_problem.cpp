#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "riparian/data.hpp"
#include "riparian/problem.hpp"
#include "test_support.hpp"

using namespace riparian;
using riparian::testing::q;
using riparian::testing::qv;

TEST_CASE("worked-example allocation is valid") {
  const auto p = Problem::line(qv({"12", "4", "0", "10"}));
  CHECK_FALSE(validate_allocation(p, qv({"6", "5", "5/2", "25/2"})));
}

TEST_CASE("keeping one's inflow is always valid") {
  const auto p = Problem::line(qv({"12", "4", "0", "10"}));
  CHECK_FALSE(validate_allocation(p, p.inflows()));
  const auto nile = nile_dataset().problem();
  CHECK_FALSE(validate_allocation(nile, nile.inflows()));
}

TEST_CASE("prefix feasibility violation is reported at the first closure") {
  const auto p = Problem::line(qv({"0", "36", "0", "0"}));
  const auto violation = validate_allocation(p, qv({"1", "35", "0", "0"}));
  REQUIRE(violation);
  const auto* f = std::get_if<FeasibilityViolation>(&*violation);
  REQUIRE(f != nullptr);
  CHECK(f->agent == 0);
  CHECK(f->allocated == 1);
  CHECK(f->available == 0);
}

TEST_CASE("the minimal violating closure is reported by agent order") {
  const auto p = Problem::line(qv({"1", "1", "1", "1"}));
  // Closures {1,2} and {1,2,3} both fail; {1} holds.
  const auto violation = validate_allocation(p, qv({"1", "2", "1", "0"}));
  REQUIRE(violation);
  CHECK(std::get<FeasibilityViolation>(*violation).agent == 1);
}

TEST_CASE("wastefulness is detected exactly") {
  const auto p = Problem::line(qv({"1", "1", "1"}));
  const auto violation = validate_allocation(p, qv({"1", "1", "1/3"}));
  REQUIRE(violation);
  const auto& w = std::get<WastefulnessViolation>(*violation);
  CHECK(w.total_allocated == q("7/3"));
  CHECK(w.total_inflow == 3);
}

TEST_CASE("tree feasibility is checked on every branch closure") {
  const auto nile = nile_dataset().problem();
  QVector x = QVector::Zero(6);
  x(3) = q("60");  // Ethiopia's closure holds only 52.6
  x(5) = nile.total() - q("60");
  const auto violation = validate_allocation(nile, x);
  REQUIRE(violation);
  CHECK(std::get<FeasibilityViolation>(*violation).agent == 3);
  CHECK_FALSE(describe(*violation).empty());
}

TEST_CASE("negative amounts and bad sizes") {
  const auto p = Problem::line(qv({"1", "1", "1"}));
  QVector x = qv({"2", "1", "0"});
  x(2) = -1;
  REQUIRE(validate_allocation(p, x));
  CHECK(std::holds_alternative<NegativeAmount>(*validate_allocation(p, x)));
  CHECK_THROWS_AS(validate_allocation(p, qv({"1", "2"})), Error);
  CHECK_THROWS_AS(Problem::line(qv({"1", "2"})), Error);
  QVector negative = qv({"1", "1", "1"});
  negative(0) = -1;
  CHECK_THROWS_AS(Problem::line(negative), Error);
}

TEST_CASE("source of a line") {
  CHECK(source_of(Problem::line(qv({"0", "36", "0", "0"}))) == 1);
  CHECK(source_of(Problem::line(qv({"12", "4", "0", "10"}))) == 0);
  CHECK_FALSE(source_of(Problem::line(qv({"0", "0", "0", "7"}))));
  try {
    source_of(nile_dataset().problem());
    FAIL("trees have no source");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotLinear);
  }
}
