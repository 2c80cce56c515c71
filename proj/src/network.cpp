#include "riparian/network.hpp"

#include <algorithm>
#include <functional>
#include <queue>

namespace riparian {

Topology validate_network(std::span<const std::optional<Index>> successors) {
  const auto n = static_cast<Index>(successors.size());
  if (n < 3) {
    throw Error(ErrorCode::TooFewAgents,
                "a river network needs at least 3 agents, got " + std::to_string(n));
  }

  Index sinks = 0;
  for (Index i = 0; i < n; ++i) {
    const auto& next = successors[static_cast<std::size_t>(i)];
    if (!next) {
      ++sinks;
    } else if (*next < 0 || *next >= n) {
      throw Error(ErrorCode::Disconnected, "agent " + std::to_string(i + 1) +
                                               " flows into unknown agent " +
                                               std::to_string(*next + 1));
    }
  }
  if (sinks > 1) {
    throw Error(ErrorCode::MultipleSinks,
                "expected exactly one sink, found " + std::to_string(sinks));
  }

  // Every walk has at most n steps unless it loops.
  for (Index start = 0; start < n; ++start) {
    Index at = start;
    for (Index steps = 0; successors[static_cast<std::size_t>(at)]; ++steps) {
      if (steps >= n) {
        throw Error(ErrorCode::Cycle,
                    "flow from agent " + std::to_string(start + 1) + " never reaches the sink");
      }
      at = *successors[static_cast<std::size_t>(at)];
    }
  }

  for (Index i = 0; i + 1 < n; ++i) {
    if (successors[static_cast<std::size_t>(i)] != i + 1) return Topology::Tree;
  }
  return Topology::Linear;
}

RiverNetwork::RiverNetwork(std::vector<std::optional<Index>> successors,
                           std::vector<std::string> labels)
    : successors_(std::move(successors)),
      labels_(std::move(labels)),
      topology_(validate_network(successors_)) {
  const auto n = size();
  const auto un = static_cast<std::size_t>(n);
  if (labels_.empty()) {
    for (Index i = 0; i < n; ++i) labels_.push_back(std::to_string(i + 1));
  } else if (labels_.size() != un) {
    throw Error(ErrorCode::SizeMismatch, "label count does not match agent count");
  }

  predecessors_.resize(un);
  for (Index i = 0; i < n; ++i) {
    if (const auto next = successors_[static_cast<std::size_t>(i)]) {
      predecessors_[static_cast<std::size_t>(*next)].push_back(i);
    } else {
      sink_ = i;
    }
  }

  downstream_.resize(un);
  upstream_.resize(un);
  for (Index i = 0; i < n; ++i) {
    auto& path = downstream_[static_cast<std::size_t>(i)];
    for (std::optional<Index> at = i; at; at = successors_[static_cast<std::size_t>(*at)]) {
      path.push_back(*at);
      upstream_[static_cast<std::size_t>(*at)].push_back(i);
    }
  }

  // Kahn's algorithm with a min-heap keeps the order deterministic.
  std::vector<std::size_t> pending(un);
  std::priority_queue<Index, std::vector<Index>, std::greater<>> ready;
  for (Index i = 0; i < n; ++i) {
    pending[static_cast<std::size_t>(i)] = predecessors_[static_cast<std::size_t>(i)].size();
    if (pending[static_cast<std::size_t>(i)] == 0) ready.push(i);
  }
  while (!ready.empty()) {
    const Index i = ready.top();
    ready.pop();
    order_.push_back(i);
    if (const auto next = successors_[static_cast<std::size_t>(i)]) {
      if (--pending[static_cast<std::size_t>(*next)] == 0) ready.push(*next);
    }
  }
}

RiverNetwork RiverNetwork::line(Index n) {
  std::vector<std::optional<Index>> successors;
  for (Index i = 0; i < n; ++i) {
    successors.push_back(i + 1 < n ? std::optional<Index>(i + 1) : std::nullopt);
  }
  return RiverNetwork(std::move(successors));
}

void RiverNetwork::check_agent(Index i) const {
  if (i < 0 || i >= size()) {
    throw Error(ErrorCode::UnknownAgent, "no agent with index " + std::to_string(i));
  }
}

std::optional<Index> RiverNetwork::successor(Index i) const {
  check_agent(i);
  return successors_[static_cast<std::size_t>(i)];
}

std::span<const Index> RiverNetwork::predecessors(Index i) const {
  check_agent(i);
  return predecessors_[static_cast<std::size_t>(i)];
}

std::span<const Index> RiverNetwork::upstream_closure(Index i) const {
  check_agent(i);
  return upstream_[static_cast<std::size_t>(i)];
}

std::span<const Index> RiverNetwork::downstream_path(Index i) const {
  check_agent(i);
  return downstream_[static_cast<std::size_t>(i)];
}

const std::string& RiverNetwork::label(Index i) const {
  check_agent(i);
  return labels_[static_cast<std::size_t>(i)];
}

std::span<const Index> upstream_closure(const RiverNetwork& net, Index i) {
  return net.upstream_closure(i);
}

std::span<const Index> downstream_path(const RiverNetwork& net, Index i) {
  return net.downstream_path(i);
}

}  // namespace riparian
