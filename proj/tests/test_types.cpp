#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "riparian/types.hpp"
#include "test_support.hpp"

using namespace riparian;
using riparian::testing::q;

TEST_CASE("decimal and fraction text parse exactly") {
  CHECK(parse_quantity("16.8") == Rational(84, 5));
  CHECK(parse_quantity("168/10") == Rational(84, 5));
  CHECK(parse_quantity("0") == 0);
  CHECK(parse_quantity("0.26") == Rational(13, 50));
  CHECK(parse_quantity("007") == 7);
  CHECK(parse_quantity("0/5") == 0);
  CHECK(parse_quantity("121.66") == Rational(6083, 50));
}

TEST_CASE("malformed numbers are rejected") {
  for (const char* bad : {"", "-1", "1/0", "1.", ".5", "1e3", "abc", "1/2/3", " 1", "1,5"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_quantity(bad), Error);
  }
}

TEST_CASE("half-up rounding for display") {
  CHECK(format_decimal(q("12.5"), 0) == "13");
  CHECK(format_decimal(q("17.3875"), 2) == "17.39");
  CHECK(format_decimal(q("20.975"), 2) == "20.98");
  CHECK(format_decimal(q("52.1625"), 2) == "52.16");
  CHECK(format_decimal(q("1/3"), 4) == "0.3333");
  CHECK(format_decimal(q("2/3"), 2) == "0.67");
  CHECK(format_decimal(q("0"), 2) == "0.00");
  CHECK(format_decimal(q("0.004"), 2) == "0.00");
  CHECK(format_decimal(q("0.005"), 2) == "0.01");
  CHECK(format_decimal(-q("2.5"), 0) == "-3");
  CHECK(round_half_up(q("0.2633"), 2) == q("0.26"));
}

TEST_CASE("exact text is the shortest faithful form") {
  CHECK(to_exact_string(q("16.8")) == "16.8");
  CHECK(to_exact_string(Rational(1, 3)) == "1/3");
  CHECK(to_exact_string(Rational(5)) == "5");
  CHECK(to_exact_string(Rational(1, 8)) == "0.125");
  CHECK(to_exact_string(Rational(-3, 4)) == "-0.75");
}

TEST_CASE("exact text round-trips through the parser") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    const long num = static_cast<long>(rng() % 100000);
    const long den = 1 + static_cast<long>(rng() % 4000);
    const Rational value(num, den);
    CAPTURE(to_exact_string(value));
    CHECK(parse_quantity(to_exact_string(value)) == value);
  }
}
