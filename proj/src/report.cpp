#include "riparian/report.hpp"

#include <array>
#include <sstream>

#include <json.hpp>

#include "riparian/rules.hpp"

namespace riparian {

using json = nlohmann::ordered_json;

bool matches_two_decimals(const Rational& derived, const Rational& printed) {
  const Rational gap = derived > printed ? Rational(derived - printed) : Rational(printed - derived);
  return gap < Rational(1, 100);
}

std::size_t NileReport::mismatches() const {
  std::size_t count = 0;
  for (const auto* cells : {&table_cells, &g_star_cells, &example_cells}) {
    for (const auto& cell : *cells) count += cell.match ? 0 : 1;
  }
  return count;
}

namespace {

// Published Nile table, agents in dataset order.
constexpr std::array<const char*, 9> kTableColumns = {"e",   "z",  "FT", "g=1/4", "g=1/2",
                                                      "g=3/4", "NT", "S",  "g*"};
constexpr std::array<std::array<const char*, 9>, 6> kTablePrinted = {{
    {"16.8", "4.42", "0", "4.2", "8.4", "12.6", "16.8", "3.36", "4.42"},
    {"16.2", "0.55", "0", "7.2", "12.3", "15.3", "16.2", "7.41", "0.55"},
    {"17.6", "0.56", "0", "9.8", "14.95", "17.02", "17.6", "13.28", "0.56"},
    {"52.6", "9.01", "0", "13.15", "26.3", "39.45", "52.6", "11.53", "9.01"},
    {"0.7", "22", "0", "17.38", "20.97", "14.64", "0.7", "31.16", "22"},
    {"0", "66.35", "103.9", "52.16", "20.97", "4.88", "0", "31.16", "66.35"},
}};
constexpr std::array<const char*, 5> kGStarPrinted = {"0.26", "0.02", "0.01", "0.17", "0.26"};

struct ExampleColumn {
  const char* gamma;
  const char* name;
  std::array<int, 4> inflows;
  std::array<const char*, 4> printed;
};
constexpr std::array<ExampleColumn, 4> kExample = {{
    {"1/2", "g=1/2, e1", {0, 36, 0, 0}, {"0", "18", "9", "9"}},
    {"1/2", "g=1/2, e2", {12, 4, 0, 10}, {"6", "5", "5/2", "25/2"}},
    {"2/3", "g=2/3, e1", {0, 36, 0, 0}, {"0", "24", "8", "2"}},
    {"2/3", "g=2/3, e2", {12, 4, 0, 10}, {"8", "16/3", "16/9", "98/9"}},
}};

std::string column_sum_note(const Rational& printed_sum, const Rational& total) {
  return "published column sums to " + to_exact_string(printed_sum) + ", inflow total is " +
         to_exact_string(total);
}

}  // namespace

NileReport reproduce_nile() {
  NileReport report{nile_dataset(), {}, {}, {}, {}, {}, {}};
  const Problem nile = report.dataset.problem();
  const QVector observed = scale_withdrawals(*report.dataset.withdrawals, nile.total());
  report.g_star = rationalize_alpha(nile, observed);

  report.columns = {
      {"e", nile.inflows()},
      {"z", observed},
      {"FT", evaluate(rule::FullTransfer{}, nile)},
      {"g=1/4", evaluate(rule::Geometric{Rational(1, 4)}, nile)},
      {"g=1/2", evaluate(rule::Geometric{Rational(1, 2)}, nile)},
      {"g=3/4", evaluate(rule::Geometric{Rational(3, 4)}, nile)},
      {"NT", evaluate(rule::NoTransfer{}, nile)},
      {"S", evaluate(rule::Serial{}, nile)},
      {"g*", evaluate(rule::MultiGeometric{report.g_star.alpha}, nile)},
  };

  QVector published_g_star(6);
  for (Index i = 0; i < 5; ++i) published_g_star(i) = parse_quantity(kGStarPrinted[static_cast<std::size_t>(i)]);
  published_g_star(5) = 1;
  report.rounded_g_star = {"g* (2 dp)", evaluate(rule::MultiGeometric{published_g_star}, nile)};

  const auto& net = report.dataset.network;
  for (std::size_t c = 0; c < kTableColumns.size(); ++c) {
    Rational printed_sum = 0;
    for (std::size_t i = 0; i < 6; ++i) printed_sum += parse_quantity(kTablePrinted[i][c]);
    for (std::size_t i = 0; i < 6; ++i) {
      const Rational derived = report.columns[c].amounts(static_cast<Index>(i));
      const Rational printed = parse_quantity(kTablePrinted[i][c]);
      CellComparison cell{"Nile", kTableColumns[c], net.label(static_cast<Index>(i)), derived,
                          printed, matches_two_decimals(derived, printed), ""};
      if (!cell.match) {
        cell.note = column_sum_note(printed_sum, nile.total());
      } else if (round_half_up(derived, 2) != printed && derived != printed) {
        cell.note = "published figure is truncated; half-up rounding gives " +
                    format_decimal(derived, 2);
      }
      report.table_cells.push_back(std::move(cell));
    }
  }

  for (Index i = 0; i < 5; ++i) {
    const Rational derived = report.g_star.alpha(i);
    const Rational printed = published_g_star(i);
    report.g_star_cells.push_back({"g*", "alpha", net.label(i), derived, printed,
                                   round_half_up(derived, 2) == printed, ""});
  }

  for (const auto& column : kExample) {
    QVector e(4);
    Rational printed_sum = 0;
    for (Index i = 0; i < 4; ++i) {
      e(i) = column.inflows[static_cast<std::size_t>(i)];
      printed_sum += parse_quantity(column.printed[static_cast<std::size_t>(i)]);
    }
    const Problem p = Problem::line(e);
    const Allocation x = evaluate(rule::Geometric{parse_quantity(column.gamma)}, p);
    for (Index i = 0; i < 4; ++i) {
      const Rational printed = parse_quantity(column.printed[static_cast<std::size_t>(i)]);
      CellComparison cell{"Example", column.name, std::to_string(i + 1), x(i), printed,
                          x(i) == printed, ""};
      if (!cell.match) {
        cell.note = printed_sum == p.total()
                        ? std::string("published column is non-wasteful")
                        : "published value violates non-wastefulness: " +
                              column_sum_note(printed_sum, p.total());
      }
      report.example_cells.push_back(std::move(cell));
    }
  }
  return report;
}

namespace {

json cells_json(const std::vector<CellComparison>& cells) {
  json out = json::array();
  for (const auto& cell : cells) {
    json entry{{"column", cell.column},
               {"agent", cell.agent},
               {"derived", to_exact_string(cell.derived)},
               {"printed", to_exact_string(cell.printed)},
               {"status", cell.match ? "MATCH" : "MISMATCH"}};
    if (!cell.note.empty()) entry["note"] = cell.note;
    out.push_back(std::move(entry));
  }
  return out;
}

void cells_text(std::ostream& out, const std::vector<CellComparison>& cells, int decimals,
                bool exact) {
  for (const auto& cell : cells) {
    const auto show = [&](const Rational& q) {
      return exact ? to_exact_string(q) : format_decimal(q, decimals);
    };
    out << "  " << (cell.match ? "MATCH   " : "MISMATCH") << "  " << cell.column << "  "
        << cell.agent << ": derived " << show(cell.derived) << ", published "
        << to_exact_string(cell.printed);
    if (!cell.note.empty()) out << "  (" << cell.note << ")";
    out << "\n";
  }
}

}  // namespace

std::string render_report(const NileReport& report, TableFormat format, int decimals) {
  const auto& net = report.dataset.network;
  std::vector<NamedAllocation> columns = report.columns;
  columns.push_back(report.rounded_g_star);

  if (format == TableFormat::Json) {
    json doc;
    doc["table"] = json::parse(emit_table(net, columns, TableFormat::Json));
    json alpha = json::array();
    for (Index i = 0; i < net.size(); ++i) {
      alpha.push_back({{"agent", net.label(i)},
                       {"exact", to_exact_string(report.g_star.alpha(i))},
                       {"rounded", format_decimal(report.g_star.alpha(i), 2)},
                       {"flag", report.g_star.flags[static_cast<std::size_t>(i)] == AlphaFlag::Exact
                                    ? "exact"
                                    : "indeterminate"}});
    }
    doc["g_star"] = std::move(alpha);
    doc["comparison"] = {{"nile", cells_json(report.table_cells)},
                         {"g_star", cells_json(report.g_star_cells)},
                         {"example", cells_json(report.example_cells)}};
    doc["mismatches"] = report.mismatches();
    return doc.dump(2) + "\n";
  }

  if (format == TableFormat::Csv) {
    std::ostringstream out;
    out << "table,column,agent,derived,printed,status\n";
    for (const auto* cells : {&report.table_cells, &report.g_star_cells, &report.example_cells}) {
      for (const auto& cell : *cells) {
        out << cell.table << ',' << cell.column << ',' << cell.agent << ','
            << to_exact_string(cell.derived) << ',' << to_exact_string(cell.printed) << ','
            << (cell.match ? "MATCH" : "MISMATCH") << "\n";
      }
    }
    return out.str();
  }

  std::ostringstream out;
  out << "Nile River water rights (km^3/year)\n\n"
      << emit_table(net, columns, TableFormat::Text, decimals) << "\n"
      << "Retention shares rationalizing z (g*):\n";
  for (Index i = 0; i + 1 < net.size(); ++i) {
    out << "  " << net.label(i) << ": " << format_decimal(report.g_star.alpha(i), 4) << " (exact "
        << to_exact_string(report.g_star.alpha(i)) << ")\n";
  }
  out << "\nComparison with the published Nile table (match: within 0.01):\n";
  cells_text(out, report.table_cells, decimals, false);
  out << "\nComparison with the published g* (half-up, 2 decimals):\n";
  cells_text(out, report.g_star_cells, 4, false);
  out << "\nComparison with the published worked example (exact):\n";
  cells_text(out, report.example_cells, decimals, true);

  out << "\nDiscrepancies:\n";
  std::size_t listed = 0;
  for (const auto* cells : {&report.table_cells, &report.g_star_cells, &report.example_cells}) {
    for (const auto& cell : *cells) {
      if (cell.match) continue;
      ++listed;
      out << "  " << cell.table << " " << cell.column << " " << cell.agent << ": derived "
          << format_decimal(cell.derived, decimals) << " vs published "
          << to_exact_string(cell.printed);
      if (!cell.note.empty()) out << " (" << cell.note << ")";
      out << "\n";
    }
  }
  if (listed == 0) out << "  none\n";
  return out.str();
}

}  // namespace riparian
