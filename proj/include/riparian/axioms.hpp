#ifndef RIPARIAN_AXIOMS_HPP
#define RIPARIAN_AXIOMS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "riparian/problem.hpp"
#include "riparian/rules.hpp"
#include "riparian/sampler.hpp"

namespace riparian {

enum class AxiomId {
  ScaleInvariance,
  UpstreamInvariance,
  EqualSources,
  Neutrality,
  PartialImplementationInvariance,
  DownstreamImpartiality,
};

std::string_view to_string(AxiomId axiom);
/// Accepts the long kebab-case names and the short forms si, ui, es, pii, di.
AxiomId parse_axiom(std::string_view text);

/// One failed equality. `agents` has one entry, or two for comparisons
/// across agents (equal sources, downstream impartiality).
struct Discrepancy {
  std::vector<Index> agents;
  Rational lhs;
  Rational rhs;

  bool operator==(const Discrepancy&) const = default;
};

/// A concrete axiom violation.
///
/// `problems`, `agent` and `parameter` are exactly the check's inputs, so
/// re-running that check reproduces `discrepancies` (see reproduces()).
struct Witness {
  AxiomId axiom;
  std::vector<Problem> problems;
  std::optional<Index> agent;
  std::optional<Rational> parameter;
  std::vector<Discrepancy> discrepancies;
};

struct Pass {};
struct Skipped {
  std::string reason;
};

using CheckResult = std::variant<Pass, Witness, Skipped>;

inline bool passed(const CheckResult& r) { return std::holds_alternative<Pass>(r); }
inline bool skipped(const CheckResult& r) { return std::holds_alternative<Skipped>(r); }
inline const Witness* witness_of(const CheckResult& r) { return std::get_if<Witness>(&r); }

/// R(rho e) == rho R(e) componentwise.
CheckResult check_scale_invariance(const BlackBoxRule& rule, const Problem& p, const Rational& rho);

/// Changing agent i's inflow to `new_value` leaves every agent in U(i)\{i}
/// untouched.
CheckResult check_upstream_invariance(const BlackBoxRule& rule, const Problem& p, Index i,
                                      const Rational& new_value);

/// Two lines whose sources carry the same inflow award those sources the
/// same amount. Skipped when a source is undefined or the inflows differ.
CheckResult check_equal_sources(const BlackBoxRule& rule, const Problem& p, const Problem& q);

/// With `amount` entering only at agent i (0 <= i <= n-2), agent i gets the
/// average of what the agents below it get.
CheckResult check_neutrality(const BlackBoxRule& rule, Index n, Index i, const Rational& amount);

/// Settling U(i)\{i} as the rule says and handing agent i the unallocated
/// remainder leaves the allocation along D(i) unchanged.
CheckResult check_pii(const BlackBoxRule& rule, const Problem& p, Index i);

/// Raising agent i's inflow by `delta` > 0 changes the allocation of any
/// two downstream agents with equal inflows by equal amounts. Skipped when
/// no such pair exists.
CheckResult check_downstream_impartiality(const BlackBoxRule& rule, const Problem& p, Index i,
                                          const Rational& delta);

/// Re-runs the check recorded in `w` and confirms the same discrepancies.
bool reproduces(const BlackBoxRule& rule, const Witness& w);

/// Draws up to `budget` instances and returns the first witness.
///
/// Each draw consumes the sampler stream in a fixed order: the problem
/// first, then the axiom-specific perturbation (scale factor, agent, new
/// inflow, increment). Equal-source pairs are drawn so that the sources
/// carry equal inflow, and downstream-impartiality draws force one tied
/// pair of downstream inflows, so the hypotheses of those axioms hold.
std::optional<Witness> search_counterexamples(const BlackBoxRule& rule, AxiomId axiom,
                                              ProblemSampler sampler, std::size_t budget);

/// An instance where a rule and the geometric rule built from its recovered
/// parameters disagree.
struct Mismatch {
  Problem problem;
  Index agent;
  Rational rule_value;
  /// Absent when the recovered parameters do not define a geometric rule.
  std::optional<Rational> geometric_value;
};

struct Member {
  QVector alpha;
};

struct NonMember {
  QVector alpha;
  Mismatch mismatch;
  /// Violation of partial-implementation invariance, upstream invariance or
  /// scale invariance found by a follow-up search, if any.
  std::optional<Witness> witness;
};

using Characterization = std::variant<Member, NonMember>;

/// Tests whether `rule` is the multi-parameter geometric rule with the
/// parameters recovered from unit inflows, on `budget` sampled lines of size n.
Characterization characterize_geometric(const BlackBoxRule& rule, Index n, ProblemSampler sampler,
                                        std::size_t budget);

std::string describe(const Witness& w);

}  // namespace riparian

#endif  // RIPARIAN_AXIOMS_HPP
