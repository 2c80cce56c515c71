#ifndef RIPARIAN_PROBLEM_HPP
#define RIPARIAN_PROBLEM_HPP

#include <optional>
#include <string>
#include <variant>

#include "riparian/network.hpp"
#include "riparian/types.hpp"

namespace riparian {

/// A river network together with one nonnegative inflow per agent.
class Problem {
 public:
  Problem(RiverNetwork network, QVector inflows);

  /// Linear river carrying `inflows`.
  static Problem line(QVector inflows);

  const RiverNetwork& network() const { return network_; }
  const QVector& inflows() const { return inflows_; }
  const Rational& inflow(Index i) const { return inflows_(i); }
  Index size() const { return network_.size(); }
  Rational total() const { return inflows_.sum(); }

  /// Same network, different inflows.
  Problem with_inflows(QVector inflows) const { return Problem(network_, std::move(inflows)); }

  bool operator==(const Problem& other) const {
    return network_ == other.network_ && inflows_ == other.inflows_;
  }

 private:
  RiverNetwork network_;
  QVector inflows_;
};

/// One amount per agent.
using Allocation = QVector;

struct FeasibilityViolation {
  Index agent;          // root of the violated upstream closure
  Rational allocated;   // sum of x over U(agent)
  Rational available;   // sum of e over U(agent)
};

struct WastefulnessViolation {
  Rational total_allocated;
  Rational total_inflow;
};

struct NegativeAmount {
  Index agent;
  Rational amount;
};

using AllocationViolation =
    std::variant<FeasibilityViolation, WastefulnessViolation, NegativeAmount>;

/// Exact feasibility (checked at every upstream closure, lowest agent index
/// first) and non-wastefulness. Returns the first violation, or nothing.
std::optional<AllocationViolation> validate_allocation(const Problem& p, const Allocation& x);

std::string describe(const AllocationViolation& violation);

/// Most upstream agent among 0..n-2 with positive inflow. Lines only.
std::optional<Index> source_of(const Problem& p);

}  // namespace riparian

#endif  // RIPARIAN_PROBLEM_HPP
