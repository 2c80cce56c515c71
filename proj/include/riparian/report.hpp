#ifndef RIPARIAN_REPORT_HPP
#define RIPARIAN_REPORT_HPP

#include <string>
#include <vector>

#include "riparian/data.hpp"
#include "riparian/rationalize.hpp"
#include "riparian/types.hpp"

namespace riparian {

/// A derived value set against the figure published for it.
struct CellComparison {
  std::string table;
  std::string column;
  std::string agent;
  Rational derived;
  Rational printed;
  bool match;
  std::string note;
};

/// Published figures carry two decimals but do not round consistently
/// (some cells are truncated). A cell matches when the derived value lies
/// strictly within 0.01 of it, i.e. the figure is the derived value rounded
/// either up or down.
bool matches_two_decimals(const Rational& derived, const Rational& printed);

struct NileReport {
  BasinDataset dataset;
  /// e, z, FT, g=1/4, g=1/2, g=3/4, NT, S, g*.
  std::vector<NamedAllocation> columns;
  RationalizationResult g_star;
  /// Allocation under the two-decimal g* as published, for reference.
  NamedAllocation rounded_g_star;
  std::vector<CellComparison> table_cells;
  std::vector<CellComparison> g_star_cells;
  std::vector<CellComparison> example_cells;

  std::size_t mismatches() const;
};

NileReport reproduce_nile();

std::string render_report(const NileReport& report, TableFormat format, int decimals = 2);

}  // namespace riparian

#endif  // RIPARIAN_REPORT_HPP
