#include "riparian/cli.hpp"

#include <optional>
#include <sstream>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "riparian/axioms.hpp"
#include "riparian/data.hpp"
#include "riparian/rationalize.hpp"
#include "riparian/report.hpp"
#include "riparian/rules.hpp"
#include "riparian/sampler.hpp"

namespace riparian::cli {

namespace {

using json = nlohmann::ordered_json;

/// Malformed flag values; reported with the usage exit code.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Flags {
  std::string rule;
  std::vector<std::string> rules;
  std::string problem;
  std::string observed = "scaled";
  std::string format = "text";
  int decimals = 2;
  std::uint64_t seed = 1;
  std::size_t budget = 1000;
  std::string axiom;
  bool fail_on_witness = false;
  std::optional<long> agents;
};

template <typename F>
auto as_usage(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

RuleSpec rule_flag(const std::string& text) {
  if (text.empty()) throw UsageError("--rule is required");
  return as_usage([&] { return parse_rule_spec(text); });
}

AxiomId axiom_flag(const std::string& text) {
  if (text.empty()) throw UsageError("--axiom is required");
  return as_usage([&] { return parse_axiom(text); });
}

TableFormat format_flag(const std::string& text) {
  return as_usage([&] { return parse_table_format(text); });
}

BasinDataset problem_flag(const std::string& text) {
  if (text.empty()) throw UsageError("--problem is required");
  if (text == "nile") return nile_dataset();
  return load_problem(text);
}

QVector observed_flag(const BasinDataset& dataset, const std::string& text) {
  if (text == "scaled" || text == "raw") {
    if (!dataset.withdrawals) {
      throw Error(ErrorCode::InfeasibleObservation, "the problem carries no withdrawal column");
    }
    if (text == "raw") return *dataset.withdrawals;
    return scale_withdrawals(*dataset.withdrawals, dataset.inflows.sum());
  }
  const BasinDataset observed = load_problem(text);
  if (!observed.withdrawals) {
    throw Error(ErrorCode::InfeasibleObservation, "'" + text + "' carries no withdrawal column");
  }
  return *observed.withdrawals;
}

SamplerOptions sampler_options(const Flags& flags, std::optional<Index> size) {
  SamplerOptions options;
  options.seed = flags.seed;
  if (flags.agents) size = *flags.agents;
  if (size) {
    if (*size < 3) throw UsageError("--n must be at least 3");
    options.min_agents = options.max_agents = *size;
  }
  return options;
}

std::string exact_list(const QVector& v) {
  std::string out = "(";
  for (Index i = 0; i < v.size(); ++i) out += (i ? ", " : "") + to_exact_string(v(i));
  return out + ")";
}

json witness_json(const Witness& w) {
  json problems = json::array();
  for (const auto& p : w.problems) {
    json inflows = json::array();
    for (Index i = 0; i < p.size(); ++i) inflows.push_back(to_exact_string(p.inflow(i)));
    problems.push_back(std::move(inflows));
  }
  json discrepancies = json::array();
  for (const auto& d : w.discrepancies) {
    json agents = json::array();
    for (const Index a : d.agents) agents.push_back(a + 1);
    discrepancies.push_back(
        {{"agents", agents}, {"lhs", to_exact_string(d.lhs)}, {"rhs", to_exact_string(d.rhs)}});
  }
  json doc{{"axiom", to_string(w.axiom)}, {"problems", problems}};
  doc["agent"] = w.agent ? json(*w.agent + 1) : json(nullptr);
  doc["parameter"] = w.parameter ? json(to_exact_string(*w.parameter)) : json(nullptr);
  doc["discrepancies"] = discrepancies;
  return doc;
}

int cmd_allocate(const Flags& flags, std::ostream& out) {
  const RuleSpec spec = rule_flag(flags.rule);
  const TableFormat format = format_flag(flags.format);
  const BasinDataset dataset = problem_flag(flags.problem);
  const std::vector<NamedAllocation> columns{{to_string(spec), evaluate(spec, dataset.problem())}};
  out << emit_table(dataset.network, columns, format, flags.decimals);
  return kExitOk;
}

int cmd_compare(const Flags& flags, std::ostream& out) {
  std::vector<RuleSpec> specs;
  if (flags.rules.empty()) {
    specs = {rule::FullTransfer{}, rule::Geometric{Rational(1, 4)}, rule::Geometric{Rational(1, 2)},
             rule::Geometric{Rational(3, 4)}, rule::NoTransfer{}, rule::Serial{}};
  } else {
    for (const auto& text : flags.rules) specs.push_back(rule_flag(text));
  }
  const TableFormat format = format_flag(flags.format);
  const BasinDataset dataset = problem_flag(flags.problem);
  const Problem p = dataset.problem();
  std::vector<NamedAllocation> columns{{"e", p.inflows()}};
  for (const auto& spec : specs) columns.push_back({to_string(spec), evaluate(spec, p)});
  out << emit_table(dataset.network, columns, format, flags.decimals);
  return kExitOk;
}

int cmd_rationalize(const Flags& flags, std::ostream& out) {
  const TableFormat format = format_flag(flags.format);
  const BasinDataset dataset = problem_flag(flags.problem);
  const Problem p = dataset.problem();
  const QVector z = observed_flag(dataset, flags.observed);
  const RationalizationResult result = rationalize_alpha(p, z);
  const FitResult fit = fit_gamma(p, z);
  const auto& net = dataset.network;
  const auto flag_name = [&](Index i) {
    return result.flags[static_cast<std::size_t>(i)] == AlphaFlag::Exact ? "exact" : "indeterminate";
  };

  if (format == TableFormat::Json) {
    json agents = json::array();
    for (Index i = 0; i < p.size(); ++i) {
      agents.push_back({{"agent", net.label(i)},
                        {"observed", to_exact_string(z(i))},
                        {"disposable", to_exact_string(result.disposable(i))},
                        {"alpha", to_exact_string(result.alpha(i))},
                        {"flag", flag_name(i)}});
    }
    std::ostringstream gamma, loss;
    gamma.precision(12);
    loss.precision(6);
    gamma << fit.gamma;
    loss << fit.loss;
    json doc{{"agents", agents},
             {"fit_gamma", {{"gamma", gamma.str()}, {"loss", loss.str()}, {"iterations", fit.iterations}}}};
    out << doc.dump(2) << "\n";
    return kExitOk;
  }

  const std::vector<NamedAllocation> columns{
      {"observed", z}, {"disposable", result.disposable}, {"alpha", result.alpha}};
  if (format == TableFormat::Csv) {
    out << emit_table(net, columns, TableFormat::Csv, flags.decimals);
    return kExitOk;
  }
  out << emit_table(net, columns, TableFormat::Text, flags.decimals);
  out << "\nexact alpha:\n";
  for (Index i = 0; i < p.size(); ++i) {
    out << "  " << net.label(i) << ": " << to_exact_string(result.alpha(i)) << " [" << flag_name(i)
        << "]\n";
  }
  out << "\nbest single gamma: " << fit.gamma << " (squared error " << fit.loss << ", "
      << fit.iterations << " golden-section steps)\n";
  return kExitOk;
}

int cmd_axioms_check(const Flags& flags, std::ostream& out) {
  const RuleSpec spec = rule_flag(flags.rule);
  const AxiomId axiom = axiom_flag(flags.axiom);
  const TableFormat format = format_flag(flags.format);
  const BasinDataset dataset = problem_flag(flags.problem);
  const Problem p = dataset.problem();
  const BlackBoxRule rule = as_black_box(spec);
  const Index n = p.size();
  ProblemSampler sampler(sampler_options(flags, std::nullopt));

  struct Outcome {
    std::string instance;
    CheckResult result;
  };
  std::vector<Outcome> outcomes;
  switch (axiom) {
    case AxiomId::ScaleInvariance:
      for (const Rational& rho : {Rational(0), Rational(2), sampler.draw_positive()}) {
        outcomes.push_back({"rho=" + to_exact_string(rho), check_scale_invariance(rule, p, rho)});
      }
      break;
    case AxiomId::UpstreamInvariance:
      for (Index i = 1; i < n; ++i) {
        const Rational value = sampler.draw_quantity();
        outcomes.push_back({"agent " + std::to_string(i + 1) + " -> " + to_exact_string(value),
                            check_upstream_invariance(rule, p, i, value)});
      }
      break;
    case AxiomId::EqualSources: {
      const auto s = source_of(p);
      if (!s) {
        outcomes.push_back({"source", Skipped{"source undefined"}});
        break;
      }
      for (Index j = 0; j + 1 < n; ++j) {
        QVector q = QVector::Zero(n);
        q(j) = p.inflow(*s);
        outcomes.push_back({"source moved to agent " + std::to_string(j + 1),
                            check_equal_sources(rule, p, p.with_inflows(std::move(q)))});
      }
      break;
    }
    case AxiomId::Neutrality: {
      if (!p.network().is_linear()) throw Error(ErrorCode::NotLinear, "neutrality needs a line");
      const Rational amount = p.total() > 0 ? p.total() : Rational(1);
      for (Index i = 0; i + 1 < n; ++i) {
        outcomes.push_back({"agent " + std::to_string(i + 1), check_neutrality(rule, n, i, amount)});
      }
      break;
    }
    case AxiomId::PartialImplementationInvariance:
      for (Index i = 0; i < n; ++i) {
        outcomes.push_back({"agent " + std::to_string(i + 1), check_pii(rule, p, i)});
      }
      break;
    case AxiomId::DownstreamImpartiality:
      for (Index i = 0; i < n; ++i) {
        const Rational delta = sampler.draw_positive();
        outcomes.push_back({"agent " + std::to_string(i + 1) + " +" + to_exact_string(delta),
                            check_downstream_impartiality(rule, p, i, delta)});
      }
      break;
  }

  bool any_witness = false;
  json results = json::array();
  for (const auto& outcome : outcomes) {
    const Witness* w = witness_of(outcome.result);
    any_witness = any_witness || w != nullptr;
    if (format == TableFormat::Json) {
      json entry{{"instance", outcome.instance}};
      if (w) {
        entry["status"] = "witness";
        entry["witness"] = witness_json(*w);
      } else if (const auto* s = std::get_if<Skipped>(&outcome.result)) {
        entry["status"] = "skipped";
        entry["reason"] = s->reason;
      } else {
        entry["status"] = "pass";
      }
      results.push_back(std::move(entry));
    } else {
      out << outcome.instance << ": ";
      if (w) {
        out << "WITNESS\n" << describe(*w);
      } else if (const auto* s = std::get_if<Skipped>(&outcome.result)) {
        out << "skipped (" << s->reason << ")\n";
      } else {
        out << "pass\n";
      }
    }
  }
  if (format == TableFormat::Json) {
    out << json{{"rule", to_string(spec)}, {"axiom", to_string(axiom)}, {"results", results}}.dump(2)
        << "\n";
  }
  return any_witness && flags.fail_on_witness ? kExitDomain : kExitOk;
}

int cmd_axioms_search(const Flags& flags, std::ostream& out) {
  const RuleSpec spec = rule_flag(flags.rule);
  const AxiomId axiom = axiom_flag(flags.axiom);
  const TableFormat format = format_flag(flags.format);
  if (flags.budget == 0) throw UsageError("--budget must be positive");
  ProblemSampler sampler(sampler_options(flags, required_size(spec)));
  const auto witness = search_counterexamples(as_black_box(spec), axiom, sampler, flags.budget);

  if (format == TableFormat::Json) {
    json doc{{"rule", to_string(spec)},
             {"axiom", to_string(axiom)},
             {"seed", flags.seed},
             {"budget", flags.budget}};
    doc["witness"] = witness ? witness_json(*witness) : json(nullptr);
    out << doc.dump(2) << "\n";
  } else if (witness) {
    out << describe(*witness);
  } else {
    out << "no witness for " << to_string(axiom) << " in " << flags.budget << " draws (seed "
        << flags.seed << ")\n";
  }
  return witness && flags.fail_on_witness ? kExitDomain : kExitOk;
}

int cmd_characterize(const Flags& flags, std::ostream& out) {
  const RuleSpec spec = rule_flag(flags.rule);
  const TableFormat format = format_flag(flags.format);
  if (flags.budget == 0) throw UsageError("--budget must be positive");
  std::optional<Index> size = required_size(spec);
  if (flags.agents) size = *flags.agents;
  if (!size) throw UsageError("--n is required for this rule");
  ProblemSampler sampler(sampler_options(flags, size));
  const Characterization verdict =
      characterize_geometric(as_black_box(spec), *size, sampler, flags.budget);

  if (const auto* member = std::get_if<Member>(&verdict)) {
    if (format == TableFormat::Json) {
      json alpha = json::array();
      for (Index i = 0; i < member->alpha.size(); ++i) alpha.push_back(to_exact_string(member->alpha(i)));
      out << json{{"rule", to_string(spec)}, {"member", true}, {"alpha", alpha}}.dump(2) << "\n";
    } else {
      out << "member: multi-parameter geometric with alpha = " << exact_list(member->alpha) << "\n";
    }
    return kExitOk;
  }

  const auto& non = std::get<NonMember>(verdict);
  if (format == TableFormat::Json) {
    json alpha = json::array();
    for (Index i = 0; i < non.alpha.size(); ++i) alpha.push_back(to_exact_string(non.alpha(i)));
    json inflows = json::array();
    for (Index i = 0; i < non.mismatch.problem.size(); ++i) {
      inflows.push_back(to_exact_string(non.mismatch.problem.inflow(i)));
    }
    json doc{{"rule", to_string(spec)}, {"member", false}, {"alpha", alpha}};
    doc["mismatch"] = {{"inflows", inflows},
                       {"agent", non.mismatch.agent + 1},
                       {"rule_value", to_exact_string(non.mismatch.rule_value)}};
    doc["mismatch"]["geometric_value"] = non.mismatch.geometric_value
                                             ? json(to_exact_string(*non.mismatch.geometric_value))
                                             : json(nullptr);
    doc["witness"] = non.witness ? witness_json(*non.witness) : json(nullptr);
    out << doc.dump(2) << "\n";
  } else {
    out << "non-member: candidate alpha = " << exact_list(non.alpha) << "\n"
        << "  on inflows " << exact_list(non.mismatch.problem.inflows()) << " agent "
        << (non.mismatch.agent + 1) << " gets " << to_exact_string(non.mismatch.rule_value);
    if (non.mismatch.geometric_value) {
      out << " instead of " << to_exact_string(*non.mismatch.geometric_value);
    }
    out << "\n";
    if (non.witness) out << describe(*non.witness);
  }
  return kExitOk;
}

int cmd_reproduce(const Flags& flags, std::ostream& out) {
  const TableFormat format = format_flag(flags.format);
  out << render_report(reproduce_nile(), format, flags.decimals);
  return kExitOk;
}

int cmd_generate(const Flags& flags, std::ostream& out) {
  const TableFormat format = format_flag(flags.format);
  ProblemSampler sampler(sampler_options(flags, std::nullopt));
  const Problem p = sampler.draw_problem();
  BasinDataset dataset{p.network(), p.inflows(), std::nullopt,
                       {"generated with seed " + std::to_string(flags.seed)}};
  out << emit_problem(dataset, format == TableFormat::Json ? DocumentFormat::Json : DocumentFormat::Csv);
  return kExitOk;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Water-rights allocation on river networks"};
  app.require_subcommand(1);
  Flags flags;

  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", flags.format, "text, csv or json");
    cmd->add_option("--decimals", flags.decimals, "display rounding (half-up)")->check(CLI::Range(0, 30));
  };
  auto add_sampling = [&](CLI::App* cmd) {
    cmd->add_option("--seed", flags.seed, "sampler seed");
    cmd->add_option("--budget", flags.budget, "number of sampled instances");
    cmd->add_option("--n", flags.agents, "agent count");
  };

  auto* allocate = app.add_subcommand("allocate", "Allocate under one rule");
  allocate->add_option("--rule", flags.rule)->required();
  allocate->add_option("--problem", flags.problem)->required();
  add_format(allocate);

  auto* compare = app.add_subcommand("compare", "Allocate under several rules side by side");
  compare->add_option("--rule", flags.rules, "repeatable; defaults to the Nile table rules");
  compare->add_option("--problem", flags.problem)->required();
  add_format(compare);

  auto* rationalize = app.add_subcommand("rationalize", "Recover retention shares from an observed allocation");
  rationalize->add_option("--problem", flags.problem)->required();
  rationalize->add_option("--observed", flags.observed, "scaled, raw, or a problem file whose withdrawal column is the observation");
  add_format(rationalize);

  auto* check = app.add_subcommand("axioms-check", "Check an axiom on one problem");
  check->add_option("--rule", flags.rule)->required();
  check->add_option("--problem", flags.problem)->required();
  check->add_option("--axiom", flags.axiom)->required();
  check->add_option("--seed", flags.seed, "seed for perturbation sizes");
  check->add_flag("--fail-on-witness", flags.fail_on_witness);
  add_format(check);

  auto* search = app.add_subcommand("axioms-search", "Search random problems for an axiom violation");
  search->add_option("--rule", flags.rule)->required();
  search->add_option("--axiom", flags.axiom)->required();
  search->add_flag("--fail-on-witness", flags.fail_on_witness);
  add_sampling(search);
  add_format(search);

  auto* characterize = app.add_subcommand("characterize", "Test membership in the multi-parameter geometric family");
  characterize->add_option("--rule", flags.rule)->required();
  add_sampling(characterize);
  add_format(characterize);

  auto* reproduce = app.add_subcommand("reproduce-nile", "Recompute and audit the published Nile figures");
  add_format(reproduce);

  auto* generate = app.add_subcommand("generate", "Write a random problem file");
  generate->add_option("--seed", flags.seed);
  generate->add_option("--n", flags.agents);
  generate->add_option("--format", flags.format, "csv or json");

  std::vector<std::string> storage{"riparian"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*allocate) return cmd_allocate(flags, out);
    if (*compare) return cmd_compare(flags, out);
    if (*rationalize) return cmd_rationalize(flags, out);
    if (*check) return cmd_axioms_check(flags, out);
    if (*search) return cmd_axioms_search(flags, out);
    if (*characterize) return cmd_characterize(flags, out);
    if (*reproduce) return cmd_reproduce(flags, out);
    if (*generate) {
      if (flags.format == "text") flags.format = "csv";
      return cmd_generate(flags, out);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitUsage;
}

}  // namespace riparian::cli
