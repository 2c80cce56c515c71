#include "riparian/problem.hpp"

namespace riparian {

Problem::Problem(RiverNetwork network, QVector inflows)
    : network_(std::move(network)), inflows_(std::move(inflows)) {
  if (inflows_.size() != network_.size()) {
    throw Error(ErrorCode::SizeMismatch, "expected " + std::to_string(network_.size()) +
                                             " inflows, got " + std::to_string(inflows_.size()));
  }
  for (Index i = 0; i < inflows_.size(); ++i) {
    if (inflows_(i) < 0) {
      throw Error(ErrorCode::NegativeQuantity,
                  "inflow of agent " + std::to_string(i + 1) + " is negative");
    }
  }
}

Problem Problem::line(QVector inflows) {
  const auto n = inflows.size();
  return Problem(RiverNetwork::line(n), std::move(inflows));
}

std::optional<AllocationViolation> validate_allocation(const Problem& p, const Allocation& x) {
  const auto& net = p.network();
  if (x.size() != net.size()) {
    throw Error(ErrorCode::SizeMismatch, "allocation has " + std::to_string(x.size()) +
                                             " entries for " + std::to_string(net.size()) +
                                             " agents");
  }
  for (Index i = 0; i < x.size(); ++i) {
    if (x(i) < 0) return NegativeAmount{i, x(i)};
  }
  for (Index i = 0; i < net.size(); ++i) {
    if (i == net.sink()) continue;
    Rational allocated = 0;
    Rational available = 0;
    for (const Index k : net.upstream_closure(i)) {
      allocated += x(k);
      available += p.inflow(k);
    }
    if (allocated > available) return FeasibilityViolation{i, allocated, available};
  }
  const Rational total_x = x.sum();
  const Rational total_e = p.total();
  if (total_x != total_e) return WastefulnessViolation{total_x, total_e};
  return std::nullopt;
}

std::string describe(const AllocationViolation& violation) {
  struct Visitor {
    std::string operator()(const FeasibilityViolation& v) const {
      return "infeasible at agent " + std::to_string(v.agent + 1) + ": " +
             to_exact_string(v.allocated) + " allocated upstream but only " +
             to_exact_string(v.available) + " available";
    }
    std::string operator()(const WastefulnessViolation& v) const {
      return "wasteful: " + to_exact_string(v.total_allocated) + " allocated vs " +
             to_exact_string(v.total_inflow) + " inflow";
    }
    std::string operator()(const NegativeAmount& v) const {
      return "negative amount for agent " + std::to_string(v.agent + 1);
    }
  };
  return std::visit(Visitor{}, violation);
}

std::optional<Index> source_of(const Problem& p) {
  if (!p.network().is_linear()) {
    throw Error(ErrorCode::NotLinear, "the source is only defined on linear rivers");
  }
  for (Index k = 0; k + 1 < p.size(); ++k) {
    if (p.inflow(k) > 0) return k;
  }
  return std::nullopt;
}

}  // namespace riparian
