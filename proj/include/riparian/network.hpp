#ifndef RIPARIAN_NETWORK_HPP
#define RIPARIAN_NETWORK_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "riparian/types.hpp"

namespace riparian {

enum class Topology { Linear, Tree };

/// Checks that `successors` describes an in-tree draining to a single sink.
/// Agents are 0-based; std::nullopt marks the sink.
///
/// Throws Error with code TooFewAgents (fewer than 3 agents), Disconnected
/// (a successor outside the agent range), MultipleSinks, or Cycle.
Topology validate_network(std::span<const std::optional<Index>> successors);

/// Agents along a river whose flow forms an in-tree to a single sink.
///
/// Construction validates the structure, so every instance is a valid
/// network. Agent indices are 0-based here; file formats and the CLI use
/// 1-based ids.
class RiverNetwork {
 public:
  explicit RiverNetwork(std::vector<std::optional<Index>> successors,
                        std::vector<std::string> labels = {});

  /// Linear river 0 -> 1 -> ... -> n-1.
  static RiverNetwork line(Index n);

  Index size() const { return static_cast<Index>(successors_.size()); }
  std::optional<Index> successor(Index i) const;
  std::span<const std::optional<Index>> successors() const { return successors_; }
  Index sink() const { return sink_; }
  Topology topology() const { return topology_; }
  bool is_linear() const { return topology_ == Topology::Linear; }

  /// Immediate upstream neighbours of i, ascending.
  std::span<const Index> predecessors(Index i) const;

  /// Upstream agents first; among ready agents the lowest index goes first.
  std::span<const Index> topological_order() const { return order_; }

  /// U(i): every agent whose path to the sink passes through i, i included. Ascending.
  std::span<const Index> upstream_closure(Index i) const;

  /// D(i): the successor chain from i to the sink, both included.
  std::span<const Index> downstream_path(Index i) const;

  const std::string& label(Index i) const;
  std::span<const std::string> labels() const { return labels_; }

  bool operator==(const RiverNetwork& other) const {
    return successors_ == other.successors_ && labels_ == other.labels_;
  }

 private:
  void check_agent(Index i) const;

  std::vector<std::optional<Index>> successors_;
  std::vector<std::string> labels_;
  Topology topology_;
  Index sink_ = 0;
  std::vector<Index> order_;
  std::vector<std::vector<Index>> predecessors_;
  std::vector<std::vector<Index>> upstream_;
  std::vector<std::vector<Index>> downstream_;
};

std::span<const Index> upstream_closure(const RiverNetwork& net, Index i);
std::span<const Index> downstream_path(const RiverNetwork& net, Index i);

}  // namespace riparian

#endif  // RIPARIAN_NETWORK_HPP
