#include "riparian/rules.hpp"

#include <sstream>

namespace riparian {

QVector serial_alpha(const RiverNetwork& net) {
  QVector alpha(net.size());
  for (Index i = 0; i < net.size(); ++i) {
    alpha(i) = Rational(1, static_cast<long>(net.downstream_path(i).size()));
  }
  return alpha;
}

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

[[noreturn]] void bad_rule(std::string_view text, std::string_view why) {
  throw Error(ErrorCode::ParseError,
              "bad rule '" + std::string(text) + "': " + std::string(why));
}

QVector parse_list(std::string_view text) {
  std::vector<Rational> values;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    values.push_back(parse_quantity(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  QVector v(static_cast<Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) v(static_cast<Index>(i)) = values[i];
  return v;
}

std::string join(const QVector& v) {
  std::string out;
  for (Index i = 0; i < v.size(); ++i) {
    if (i > 0) out += ',';
    out += to_exact_string(v(i));
  }
  return out;
}

}  // namespace

Allocation evaluate(const RuleSpec& spec, const Problem& p) {
  const auto& net = p.network();
  const auto& e = p.inflows();
  return std::visit(
      Overloaded{
          [&](const rule::NoTransfer&) -> Allocation { return e; },
          [&](const rule::FullTransfer&) -> Allocation {
            Allocation x = Allocation::Zero(net.size());
            x(net.sink()) = p.total();
            return x;
          },
          [&](const rule::Geometric& g) -> Allocation {
            detail::require_unit_interval(g.gamma, "gamma");
            return geometric_recursive(net, e, uniform_retention(net, g.gamma));
          },
          [&](const rule::MultiGeometric& m) -> Allocation {
            return geometric_recursive(net, e, m.alpha);
          },
          [&](const rule::Serial&) -> Allocation { return serial(net, e); },
          [&](const rule::Beta& b) -> Allocation {
            detail::require_linear(net, "beta rule");
            return geometric_recursive(net, e, beta_alpha_vector(net.size(), b.pivot, b.beta));
          },
          [&](const rule::AdditiveDelta& d) -> Allocation { return additive_delta(net, e, d.delta); },
          [&](const rule::Lambda& l) -> Allocation { return lambda_rule(net, e, l.lambda); },
      },
      spec);
}

std::optional<Index> required_size(const RuleSpec& spec) {
  if (const auto* m = std::get_if<rule::MultiGeometric>(&spec)) return m->alpha.size();
  if (const auto* d = std::get_if<rule::AdditiveDelta>(&spec)) return d->delta.size();
  return std::nullopt;
}

RuleSpec parse_rule_spec(std::string_view text) {
  const auto colon = text.find(':');
  const auto head = text.substr(0, colon);
  const auto arg = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  const bool has_arg = colon != std::string_view::npos;

  auto no_arg = [&](RuleSpec spec) {
    if (has_arg) bad_rule(text, "takes no parameter");
    return spec;
  };
  auto need_arg = [&] {
    if (!has_arg || arg.empty()) bad_rule(text, "missing parameter");
  };

  if (head == "no-transfer") return no_arg(rule::NoTransfer{});
  if (head == "full-transfer") return no_arg(rule::FullTransfer{});
  if (head == "serial") return no_arg(rule::Serial{});
  need_arg();
  if (head == "geometric") return rule::Geometric{parse_quantity(arg)};
  if (head == "lambda") return rule::Lambda{parse_quantity(arg)};
  if (head == "multi") return rule::MultiGeometric{parse_list(arg)};
  if (head == "delta") return rule::AdditiveDelta{parse_list(arg)};
  if (head == "beta") {
    const auto second = arg.find(':');
    if (second == std::string_view::npos) bad_rule(text, "expected beta:<k>:<q>");
    const Rational k = parse_quantity(arg.substr(0, second));
    if (boost::multiprecision::denominator(k) != 1 || k < 1) {
      bad_rule(text, "pivot must be a positive integer");
    }
    const auto pivot = boost::multiprecision::numerator(k).convert_to<long>() - 1;
    return rule::Beta{pivot, parse_quantity(arg.substr(second + 1))};
  }
  bad_rule(text, "unknown rule family");
}

std::string to_string(const RuleSpec& spec) {
  return std::visit(
      Overloaded{
          [](const rule::NoTransfer&) -> std::string { return "no-transfer"; },
          [](const rule::FullTransfer&) -> std::string { return "full-transfer"; },
          [](const rule::Geometric& g) { return "geometric:" + to_exact_string(g.gamma); },
          [](const rule::MultiGeometric& m) { return "multi:" + join(m.alpha); },
          [](const rule::Serial&) -> std::string { return "serial"; },
          [](const rule::Beta& b) {
            return "beta:" + std::to_string(b.pivot + 1) + ":" + to_exact_string(b.beta);
          },
          [](const rule::AdditiveDelta& d) { return "delta:" + join(d.delta); },
          [](const rule::Lambda& l) { return "lambda:" + to_exact_string(l.lambda); },
      },
      spec);
}

BlackBoxRule as_black_box(RuleSpec spec) {
  return [spec = std::move(spec)](const Problem& p) { return evaluate(spec, p); };
}

QVector recover_alpha(const BlackBoxRule& rule, Index n) {
  QVector alpha(n);
  for (Index i = 0; i + 1 < n; ++i) {
    QVector unit = QVector::Zero(n);
    unit(i) = 1;
    alpha(i) = rule(Problem::line(std::move(unit)))(i);
  }
  alpha(n - 1) = 1;
  return alpha;
}

}  // namespace riparian
