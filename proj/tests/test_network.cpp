#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <vector>

#include "riparian/data.hpp"
#include "riparian/network.hpp"

using namespace riparian;

namespace {

std::vector<Index> as_vector(std::span<const Index> s) { return {s.begin(), s.end()}; }

ErrorCode code_of(const std::vector<std::optional<Index>>& successors) {
  try {
    validate_network(successors);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a validation error");
  return ErrorCode::ParseError;
}

// Tanzania, Uganda, South Sudan, Ethiopia, Sudan, Egypt.
constexpr Index T = 0, U = 1, SS = 2, Eth = 3, Sud = 4, Eg = 5;

}  // namespace

TEST_CASE("minimal line is valid and linear") {
  const std::vector<std::optional<Index>> line{1, 2, std::nullopt};
  CHECK(validate_network(line) == Topology::Linear);
}

TEST_CASE("the Nile is a valid tree") {
  const auto nile = nile_dataset().network;
  CHECK(nile.topology() == Topology::Tree);
  CHECK(nile.sink() == Eg);
  CHECK(as_vector(nile.predecessors(Sud)) == std::vector<Index>{SS, Eth});
  CHECK(as_vector(nile.topological_order()) == std::vector<Index>{T, U, SS, Eth, Sud, Eg});
}

TEST_CASE("structural errors") {
  CHECK(code_of({1, 0, std::nullopt}) == ErrorCode::Cycle);
  CHECK(code_of({1, 2, 0}) == ErrorCode::Cycle);
  CHECK(code_of({1, std::nullopt, std::nullopt}) == ErrorCode::MultipleSinks);
  CHECK(code_of({1, 7, std::nullopt}) == ErrorCode::Disconnected);
  CHECK(code_of({1, std::nullopt}) == ErrorCode::TooFewAgents);
  CHECK(code_of({}) == ErrorCode::TooFewAgents);
  CHECK(code_of({0, 2, std::nullopt}) == ErrorCode::Cycle);
}

TEST_CASE("upstream closures") {
  const auto line = RiverNetwork::line(4);
  CHECK(as_vector(upstream_closure(line, 1)) == std::vector<Index>{0, 1});

  const auto nile = nile_dataset().network;
  CHECK(as_vector(upstream_closure(nile, Sud)) == std::vector<Index>{T, U, SS, Eth, Sud});
  CHECK(as_vector(upstream_closure(nile, T)) == std::vector<Index>{T});
  CHECK(as_vector(upstream_closure(nile, Eth)) == std::vector<Index>{Eth});
  CHECK_THROWS_AS(upstream_closure(nile, 6), Error);
}

TEST_CASE("downstream paths") {
  const auto line = RiverNetwork::line(4);
  CHECK(as_vector(downstream_path(line, 1)) == std::vector<Index>{1, 2, 3});
  CHECK(as_vector(downstream_path(line, 3)) == std::vector<Index>{3});

  const auto nile = nile_dataset().network;
  CHECK(as_vector(downstream_path(nile, Eth)) == std::vector<Index>{Eth, Sud, Eg});
  CHECK(as_vector(downstream_path(nile, T)) == std::vector<Index>{T, U, SS, Sud, Eg});
  CHECK_THROWS_AS(downstream_path(nile, -1), Error);
}

TEST_CASE("on lines U(i) and D(i) partition the agents and meet at i") {
  for (Index n = 3; n <= 9; ++n) {
    const auto line = RiverNetwork::line(n);
    for (Index i = 0; i < n; ++i) {
      auto up = as_vector(line.upstream_closure(i));
      auto down = as_vector(line.downstream_path(i));
      std::vector<Index> expected_up(static_cast<std::size_t>(i + 1));
      std::iota(expected_up.begin(), expected_up.end(), Index{0});
      CHECK(up == expected_up);
      CHECK(down.front() == i);
      CHECK(down.back() == n - 1);
      CHECK(static_cast<Index>(up.size() + down.size()) == n + 1);
      std::vector<Index> meet;
      std::set_intersection(up.begin(), up.end(), down.begin(), down.end(), std::back_inserter(meet));
      CHECK(meet == std::vector<Index>{i});
    }
  }
}

TEST_CASE("every agent on a tree reaches the sink and lies in the sink's closure") {
  const auto nile = nile_dataset().network;
  CHECK(static_cast<Index>(nile.upstream_closure(nile.sink()).size()) == nile.size());
  for (Index i = 0; i < nile.size(); ++i) CHECK(nile.downstream_path(i).back() == nile.sink());
}
