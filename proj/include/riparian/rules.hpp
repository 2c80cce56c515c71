#ifndef RIPARIAN_RULES_HPP
#define RIPARIAN_RULES_HPP

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "riparian/network.hpp"
#include "riparian/problem.hpp"
#include "riparian/types.hpp"

namespace riparian {

namespace detail {

template <typename Scalar>
void require_size(const Vector<Scalar>& v, Index n, const char* what) {
  if (v.size() != n) {
    throw Error(ErrorCode::SizeMismatch, std::string(what) + " has " + std::to_string(v.size()) +
                                             " entries for " + std::to_string(n) + " agents");
  }
}

template <typename Scalar>
void require_unit_interval(const Scalar& value, const char* what) {
  if (value < Scalar(0) || value > Scalar(1)) {
    throw Error(ErrorCode::BadParameter, std::string(what) + " must lie in [0,1]");
  }
}

/// Entries in [0,1] everywhere and exactly 1 at the sink.
template <typename Scalar>
void require_retention(const RiverNetwork& net, const Vector<Scalar>& retain, const char* what) {
  require_size(retain, net.size(), what);
  for (Index i = 0; i < retain.size(); ++i) require_unit_interval(retain(i), what);
  if (retain(net.sink()) != Scalar(1)) {
    throw Error(ErrorCode::BadParameter, std::string(what) + " must equal 1 at the sink");
  }
}

inline void require_linear(const RiverNetwork& net, const char* rule) {
  if (!net.is_linear()) {
    throw Error(ErrorCode::NotLinear, std::string(rule) + " is only defined on linear rivers");
  }
}

template <typename Scalar>
Scalar power(const Scalar& base, Index exponent) {
  Scalar result(1);
  for (Index k = 0; k < exponent; ++k) result *= base;
  return result;
}

}  // namespace detail

/// Multi-parameter geometric rule by sequential transfer.
///
/// Agents are visited in topological order. Each one's disposable inflow is
/// its own inflow plus whatever its immediate upstream neighbours passed on;
/// it keeps `retain(i)` of that and passes the rest to its successor. The
/// sink keeps everything it receives. On a confluence the residuals of all
/// incoming branches are pooled.
template <typename Scalar>
Vector<Scalar> geometric_recursive(const RiverNetwork& net, const Vector<Scalar>& inflows,
                                   const Vector<Scalar>& retain) {
  detail::require_size(inflows, net.size(), "inflow vector");
  detail::require_retention(net, retain, "retention vector");

  Vector<Scalar> kept(net.size());
  Vector<Scalar> residual(net.size());
  for (const Index i : net.topological_order()) {
    Scalar disposable = inflows(i);
    for (const Index up : net.predecessors(i)) disposable += residual(up);
    kept(i) = i == net.sink() ? disposable : Scalar(retain(i) * disposable);
    residual(i) = disposable - kept(i);
  }
  return kept;
}

/// Single-parameter geometric rule on a line via the explicit power sums.
template <typename Scalar>
Vector<Scalar> geometric_closed_form(const RiverNetwork& net, const Vector<Scalar>& inflows,
                                     const Scalar& gamma) {
  detail::require_linear(net, "closed-form geometric rule");
  detail::require_size(inflows, net.size(), "inflow vector");
  detail::require_unit_interval(gamma, "gamma");

  const Index n = net.size();
  const Scalar pass = Scalar(1) - gamma;
  Vector<Scalar> x(n);
  for (Index i = 0; i < n; ++i) {
    Scalar received(0);
    for (Index k = 0; k < i; ++k) received += detail::power(pass, i - k) * inflows(k);
    x(i) = i + 1 < n ? Scalar(gamma * (inflows(i) + received)) : Scalar(inflows(i) + received);
  }
  return x;
}

/// Every inflow split equally among its own agent and all agents on its
/// downstream path.
template <typename Scalar>
Vector<Scalar> serial(const RiverNetwork& net, const Vector<Scalar>& inflows) {
  detail::require_size(inflows, net.size(), "inflow vector");
  Vector<Scalar> x = Vector<Scalar>::Zero(net.size());
  for (Index j = 0; j < net.size(); ++j) {
    const auto path = net.downstream_path(j);
    const Scalar share = inflows(j) / Scalar(static_cast<long>(path.size()));
    for (const Index k : path) x(k) += share;
  }
  return x;
}

/// Retention vector of the rule that keeps everything upstream of `pivot`,
/// keeps `beta` at the pivot and behaves serially below it (0-based pivot).
template <typename Scalar>
Vector<Scalar> beta_alpha_vector(Index n, Index pivot, const Scalar& beta) {
  if (n < 3) throw Error(ErrorCode::TooFewAgents, "beta rule needs at least 3 agents");
  if (pivot < 0 || pivot > n - 2) {
    throw Error(ErrorCode::BadParameter, "beta pivot must be one of the first n-1 agents");
  }
  if (beta < Scalar(0) || beta >= Scalar(1)) {
    throw Error(ErrorCode::BadParameter, "beta must lie in [0,1)");
  }
  Vector<Scalar> alpha(n);
  for (Index i = 0; i < n; ++i) {
    if (i < pivot || i == n - 1) {
      alpha(i) = Scalar(1);
    } else if (i == pivot) {
      alpha(i) = beta;
    } else {
      alpha(i) = Scalar(1) / Scalar(static_cast<long>(n - i));
    }
  }
  return alpha;
}

/// Additive rule: agent i keeps delta_i of its inflow and spreads the rest
/// evenly over everyone strictly downstream.
template <typename Scalar>
Vector<Scalar> additive_delta(const RiverNetwork& net, const Vector<Scalar>& inflows,
                              const Vector<Scalar>& delta) {
  detail::require_linear(net, "additive delta rule");
  detail::require_size(inflows, net.size(), "inflow vector");
  detail::require_retention(net, delta, "delta vector");

  const Index n = net.size();
  Vector<Scalar> x(n);
  Scalar shared(0);
  for (Index i = 0; i < n; ++i) {
    x(i) = delta(i) * inflows(i) + shared;
    if (i + 1 < n) shared += (Scalar(1) - delta(i)) * inflows(i) / Scalar(static_cast<long>(n - 1 - i));
  }
  return x;
}

/// Convex mix of keeping one's inflow and spreading it evenly downstream.
template <typename Scalar>
Vector<Scalar> lambda_rule(const RiverNetwork& net, const Vector<Scalar>& inflows,
                           const Scalar& lambda) {
  detail::require_linear(net, "lambda rule");
  detail::require_size(inflows, net.size(), "inflow vector");
  detail::require_unit_interval(lambda, "lambda");

  const Index n = net.size();
  Vector<Scalar> x(n);
  Scalar spread(0);
  for (Index i = 0; i < n; ++i) {
    x(i) = i + 1 < n ? Scalar(lambda * inflows(i)) : inflows(i);
    x(i) += (Scalar(1) - lambda) * spread;
    if (i + 1 < n) spread += inflows(i) / Scalar(static_cast<long>(n - 1 - i));
  }
  return x;
}

/// Retention 1/|D(i)|; reproduces the serial rule through the recursion.
QVector serial_alpha(const RiverNetwork& net);

/// Uniform retention `gamma` with 1 at the sink.
template <typename Scalar>
Vector<Scalar> uniform_retention(const RiverNetwork& net, const Scalar& gamma) {
  Vector<Scalar> retain = Vector<Scalar>::Constant(net.size(), gamma);
  retain(net.sink()) = Scalar(1);
  return retain;
}

namespace rule {
struct NoTransfer {};
struct FullTransfer {};
struct Geometric { Rational gamma; };
struct MultiGeometric { QVector alpha; };
struct Serial {};
/// `pivot` is 0-based.
struct Beta { Index pivot; Rational beta; };
struct AdditiveDelta { QVector delta; };
struct Lambda { Rational lambda; };
}  // namespace rule

using RuleSpec = std::variant<rule::NoTransfer, rule::FullTransfer, rule::Geometric,
                              rule::MultiGeometric, rule::Serial, rule::Beta,
                              rule::AdditiveDelta, rule::Lambda>;

Allocation evaluate(const RuleSpec& spec, const Problem& p);

/// Agent count the rule's parameters pin down, if any.
std::optional<Index> required_size(const RuleSpec& spec);

/// Shell grammar: no-transfer, full-transfer, geometric:<q>, multi:<q,...>,
/// serial, beta:<k>:<q> (1-based k), delta:<q,...>, lambda:<q>.
RuleSpec parse_rule_spec(std::string_view text);
std::string to_string(const RuleSpec& spec);

/// Any deterministic map from problems to allocations.
using BlackBoxRule = std::function<Allocation(const Problem&)>;

BlackBoxRule as_black_box(RuleSpec spec);

/// alpha_i = R_i(unit inflow at i) for i < n-1, and 1 for the sink.
QVector recover_alpha(const BlackBoxRule& rule, Index n);

}  // namespace riparian

#endif  // RIPARIAN_RULES_HPP
