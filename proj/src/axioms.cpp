#include "riparian/axioms.hpp"

#include <algorithm>
#include <sstream>

namespace riparian {

std::string_view to_string(AxiomId axiom) {
  switch (axiom) {
    case AxiomId::ScaleInvariance: return "scale-invariance";
    case AxiomId::UpstreamInvariance: return "upstream-invariance";
    case AxiomId::EqualSources: return "equal-sources";
    case AxiomId::Neutrality: return "neutrality";
    case AxiomId::PartialImplementationInvariance: return "partial-implementation-invariance";
    case AxiomId::DownstreamImpartiality: return "downstream-impartiality";
  }
  return "unknown";
}

AxiomId parse_axiom(std::string_view text) {
  struct Name {
    std::string_view full, short_form;
    AxiomId id;
  };
  static constexpr Name names[] = {
      {"scale-invariance", "si", AxiomId::ScaleInvariance},
      {"upstream-invariance", "ui", AxiomId::UpstreamInvariance},
      {"equal-sources", "es", AxiomId::EqualSources},
      {"neutrality", "neutrality", AxiomId::Neutrality},
      {"partial-implementation-invariance", "pii", AxiomId::PartialImplementationInvariance},
      {"downstream-impartiality", "di", AxiomId::DownstreamImpartiality},
  };
  for (const auto& name : names) {
    if (text == name.full || text == name.short_form) return name.id;
  }
  throw Error(ErrorCode::ParseError, "unknown axiom '" + std::string(text) + "'");
}

namespace {

void check_agent(const Problem& p, Index i) {
  if (i < 0 || i >= p.size()) {
    throw Error(ErrorCode::UnknownAgent, "no agent with index " + std::to_string(i));
  }
}

CheckResult verdict(Witness w) {
  if (w.discrepancies.empty()) return Pass{};
  return w;
}

}  // namespace

CheckResult check_scale_invariance(const BlackBoxRule& rule, const Problem& p, const Rational& rho) {
  if (rho < 0) throw Error(ErrorCode::BadParameter, "scale factor must be nonnegative");
  const Problem scaled = p.with_inflows(rho * p.inflows());
  const Allocation lhs = rule(scaled);
  const Allocation rhs = rho * rule(p);

  Witness w{AxiomId::ScaleInvariance, {p, scaled}, std::nullopt, rho, {}};
  for (Index k = 0; k < p.size(); ++k) {
    if (lhs(k) != rhs(k)) w.discrepancies.push_back({{k}, lhs(k), rhs(k)});
  }
  return verdict(std::move(w));
}

CheckResult check_upstream_invariance(const BlackBoxRule& rule, const Problem& p, Index i,
                                      const Rational& new_value) {
  check_agent(p, i);
  if (new_value < 0) throw Error(ErrorCode::BadParameter, "new inflow must be nonnegative");
  QVector changed_inflows = p.inflows();
  changed_inflows(i) = new_value;
  const Problem changed = p.with_inflows(std::move(changed_inflows));
  const Allocation before = rule(p);
  const Allocation after = rule(changed);

  Witness w{AxiomId::UpstreamInvariance, {p, changed}, i, new_value, {}};
  for (const Index k : p.network().upstream_closure(i)) {
    if (k != i && before(k) != after(k)) w.discrepancies.push_back({{k}, before(k), after(k)});
  }
  return verdict(std::move(w));
}

CheckResult check_equal_sources(const BlackBoxRule& rule, const Problem& p, const Problem& q) {
  if (p.size() != q.size()) {
    throw Error(ErrorCode::SizeMismatch, "equal sources compares rivers with the same agent count");
  }
  const auto s = source_of(p);
  const auto t = source_of(q);
  if (!s || !t) return Skipped{"source undefined"};
  if (p.inflow(*s) != q.inflow(*t)) return Skipped{"source inflows differ"};

  const Rational lhs = rule(p)(*s);
  const Rational rhs = rule(q)(*t);
  Witness w{AxiomId::EqualSources, {p, q}, std::nullopt, std::nullopt, {}};
  if (lhs != rhs) w.discrepancies.push_back({{*s, *t}, lhs, rhs});
  return verdict(std::move(w));
}

CheckResult check_neutrality(const BlackBoxRule& rule, Index n, Index i, const Rational& amount) {
  if (n < 3) throw Error(ErrorCode::TooFewAgents, "neutrality needs at least 3 agents");
  if (i < 0 || i > n - 2) {
    throw Error(ErrorCode::BadParameter, "neutrality concerns one of the first n-1 agents");
  }
  if (amount <= 0) throw Error(ErrorCode::BadParameter, "neutrality needs a positive inflow");

  QVector e = QVector::Zero(n);
  e(i) = amount;
  const Problem p = Problem::line(std::move(e));
  const Allocation x = rule(p);
  const Rational average = x.tail(n - 1 - i).sum() / Rational(static_cast<long>(n - 1 - i));

  Witness w{AxiomId::Neutrality, {p}, i, amount, {}};
  if (x(i) != average) w.discrepancies.push_back({{i}, x(i), average});
  return verdict(std::move(w));
}

CheckResult check_pii(const BlackBoxRule& rule, const Problem& p, Index i) {
  check_agent(p, i);
  const auto& net = p.network();
  const Allocation original = rule(p);

  QVector residual_inflows = p.inflows();
  for (const Index k : net.upstream_closure(i)) {
    if (k == i) continue;
    residual_inflows(i) += p.inflow(k) - original(k);
    residual_inflows(k) = 0;
  }
  const Problem residual = p.with_inflows(std::move(residual_inflows));
  const Allocation settled = rule(residual);

  Witness w{AxiomId::PartialImplementationInvariance, {p, residual}, i, std::nullopt, {}};
  for (const Index j : net.downstream_path(i)) {
    if (original(j) != settled(j)) w.discrepancies.push_back({{j}, original(j), settled(j)});
  }
  return verdict(std::move(w));
}

CheckResult check_downstream_impartiality(const BlackBoxRule& rule, const Problem& p, Index i,
                                          const Rational& delta) {
  if (!p.network().is_linear()) {
    throw Error(ErrorCode::NotLinear, "downstream impartiality is only defined on linear rivers");
  }
  check_agent(p, i);
  if (delta <= 0) throw Error(ErrorCode::BadParameter, "inflow increment must be positive");

  QVector raised_inflows = p.inflows();
  raised_inflows(i) += delta;
  const Problem raised = p.with_inflows(std::move(raised_inflows));

  bool tied = false;
  Witness w{AxiomId::DownstreamImpartiality, {p, raised}, i, delta, {}};
  std::optional<Allocation> change;
  for (Index k = i + 1; k < p.size(); ++k) {
    for (Index l = k + 1; l < p.size(); ++l) {
      if (p.inflow(k) != p.inflow(l)) continue;
      tied = true;
      if (!change) change = rule(raised) - rule(p);
      if ((*change)(k) != (*change)(l)) {
        w.discrepancies.push_back({{k, l}, (*change)(k), (*change)(l)});
      }
    }
  }
  if (!tied) return Skipped{"no pair of downstream agents with equal inflows"};
  return verdict(std::move(w));
}

bool reproduces(const BlackBoxRule& rule, const Witness& w) {
  if (w.discrepancies.empty() || w.problems.empty()) return false;
  const Problem& p = w.problems.front();
  CheckResult again;
  switch (w.axiom) {
    case AxiomId::ScaleInvariance:
      if (!w.parameter) return false;
      again = check_scale_invariance(rule, p, *w.parameter);
      break;
    case AxiomId::UpstreamInvariance:
      if (!w.agent || !w.parameter) return false;
      again = check_upstream_invariance(rule, p, *w.agent, *w.parameter);
      break;
    case AxiomId::EqualSources:
      if (w.problems.size() != 2) return false;
      again = check_equal_sources(rule, p, w.problems[1]);
      break;
    case AxiomId::Neutrality:
      if (!w.agent || !w.parameter) return false;
      again = check_neutrality(rule, p.size(), *w.agent, *w.parameter);
      break;
    case AxiomId::PartialImplementationInvariance:
      if (!w.agent) return false;
      again = check_pii(rule, p, *w.agent);
      break;
    case AxiomId::DownstreamImpartiality:
      if (!w.agent || !w.parameter) return false;
      again = check_downstream_impartiality(rule, p, *w.agent, *w.parameter);
      break;
  }
  const Witness* replay = witness_of(again);
  return replay != nullptr && replay->discrepancies == w.discrepancies &&
         std::all_of(w.discrepancies.begin(), w.discrepancies.end(),
                     [](const Discrepancy& d) { return d.lhs != d.rhs; });
}

namespace {

CheckResult draw_and_check(const BlackBoxRule& rule, AxiomId axiom, ProblemSampler& sampler) {
  const Index n = sampler.draw_size();
  switch (axiom) {
    case AxiomId::ScaleInvariance: {
      const Problem p = sampler.draw_problem(n);
      return check_scale_invariance(rule, p, sampler.draw_quantity());
    }
    case AxiomId::UpstreamInvariance: {
      const Problem p = sampler.draw_problem(n);
      const Index i = sampler.draw_index(1, n - 1);
      return check_upstream_invariance(rule, p, i, sampler.draw_quantity());
    }
    case AxiomId::EqualSources: {
      const Problem p = sampler.draw_problem(n);
      QVector other = sampler.draw_inflows(n);
      const auto s = source_of(p);
      const auto t = source_of(Problem::line(other));
      if (s && t) other(*t) = p.inflow(*s);
      return check_equal_sources(rule, p, Problem::line(std::move(other)));
    }
    case AxiomId::Neutrality: {
      const Index i = sampler.draw_index(0, n - 2);
      return check_neutrality(rule, n, i, sampler.draw_positive());
    }
    case AxiomId::PartialImplementationInvariance: {
      const Problem p = sampler.draw_problem(n);
      return check_pii(rule, p, sampler.draw_index(0, n - 1));
    }
    case AxiomId::DownstreamImpartiality: {
      QVector e = sampler.draw_inflows(n);
      const Index i = sampler.draw_index(0, n - 3);
      const Index k = sampler.draw_index(i + 1, n - 2);
      const Index l = sampler.draw_index(k + 1, n - 1);
      e(l) = e(k);
      return check_downstream_impartiality(rule, Problem::line(std::move(e)), i,
                                           sampler.draw_positive());
    }
  }
  return Skipped{"unknown axiom"};
}

}  // namespace

std::optional<Witness> search_counterexamples(const BlackBoxRule& rule, AxiomId axiom,
                                              ProblemSampler sampler, std::size_t budget) {
  for (std::size_t draw = 0; draw < budget; ++draw) {
    CheckResult result = draw_and_check(rule, axiom, sampler);
    if (auto* w = std::get_if<Witness>(&result)) return std::move(*w);
  }
  return std::nullopt;
}

Characterization characterize_geometric(const BlackBoxRule& rule, Index n, ProblemSampler sampler,
                                        std::size_t budget) {
  const QVector alpha = recover_alpha(rule, n);
  const RiverNetwork line = RiverNetwork::line(n);

  // The follow-up search stays at size n. A rule whose allocations are not
  // valid can make the perturbed problems invalid; that ends the search.
  auto follow_up = [&](const ProblemSampler& base) -> std::optional<Witness> {
    SamplerOptions options = base.options();
    options.min_agents = options.max_agents = n;
    for (const AxiomId axiom : {AxiomId::PartialImplementationInvariance,
                                AxiomId::UpstreamInvariance, AxiomId::ScaleInvariance}) {
      try {
        if (auto w = search_counterexamples(rule, axiom, ProblemSampler(options), budget)) return w;
      } catch (const Error&) {
        return std::nullopt;
      }
    }
    return std::nullopt;
  };

  const ProblemSampler start = sampler;
  for (Index i = 0; i + 1 < n; ++i) {
    if (alpha(i) < 0 || alpha(i) > 1) {
      QVector unit = QVector::Zero(n);
      unit(i) = 1;
      return NonMember{alpha, Mismatch{Problem::line(std::move(unit)), i, alpha(i), std::nullopt},
                       follow_up(start)};
    }
  }

  for (std::size_t draw = 0; draw < budget; ++draw) {
    const Problem p = sampler.draw_problem(n);
    const Allocation actual = rule(p);
    const Allocation expected = geometric_recursive(line, p.inflows(), alpha);
    for (Index k = 0; k < n; ++k) {
      if (actual(k) != expected(k)) {
        return NonMember{alpha, Mismatch{p, k, actual(k), expected(k)}, follow_up(start)};
      }
    }
  }
  return Member{alpha};
}

std::string describe(const Witness& w) {
  std::ostringstream out;
  out << to_string(w.axiom) << " violated";
  if (w.agent) out << " at agent " << (*w.agent + 1);
  if (w.parameter) out << " (parameter " << to_exact_string(*w.parameter) << ")";
  out << "\n";
  for (std::size_t k = 0; k < w.problems.size(); ++k) {
    out << "  problem " << (k + 1) << ": (";
    const auto& e = w.problems[k].inflows();
    for (Index i = 0; i < e.size(); ++i) out << (i ? ", " : "") << to_exact_string(e(i));
    out << ")\n";
  }
  for (const auto& d : w.discrepancies) {
    out << "  agent";
    for (const Index a : d.agents) out << ' ' << (a + 1);
    out << ": " << to_exact_string(d.lhs) << " != " << to_exact_string(d.rhs) << "\n";
  }
  return out.str();
}

}  // namespace riparian
