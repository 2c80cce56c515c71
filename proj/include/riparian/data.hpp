#ifndef RIPARIAN_DATA_HPP
#define RIPARIAN_DATA_HPP

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "riparian/network.hpp"
#include "riparian/problem.hpp"
#include "riparian/types.hpp"

namespace riparian {

/// A river basin as read from disk: structure, inflows, and optionally the
/// observed withdrawals, with free-text provenance notes.
struct BasinDataset {
  RiverNetwork network;
  QVector inflows;
  std::optional<QVector> withdrawals;
  std::vector<std::string> provenance;

  Problem problem() const { return Problem(network, inflows); }
  bool operator==(const BasinDataset& other) const;
};

enum class DocumentFormat { Csv, Json };

/// CSV: optional leading "# note" lines (provenance), then the header
/// `id,name,successor,inflow[,withdrawal]` and one row per agent with ids
/// 1..n. JSON: {"agents": [{id, name, successor|null, inflow, withdrawal?}],
/// "provenance": [...]?}. Numbers are decimals or p/q.
///
/// Throws Error(ParseError) with the offending line or JSON path, or the
/// network validation error.
BasinDataset parse_problem(std::string_view text, DocumentFormat format);

std::string emit_problem(const BasinDataset& dataset, DocumentFormat format);

/// Reads a problem file; `.json` files (or text starting with '{') are JSON,
/// anything else CSV.
BasinDataset load_problem(const std::filesystem::path& path);

/// Six Nile countries from the headwaters to the delta, with inflows and
/// total freshwater withdrawals in km^3/year.
BasinDataset nile_dataset();

enum class TableFormat { Text, Csv, Json };

struct NamedAllocation {
  std::string name;
  QVector amounts;
};

/// One row per agent, one column per allocation. Text and CSV round half-up
/// to `decimals`; JSON carries exact values as strings.
/// Throws MixedNetworks when a column does not match the network size.
std::string emit_table(const RiverNetwork& network, std::span<const NamedAllocation> columns,
                       TableFormat format, int decimals = 2);

TableFormat parse_table_format(std::string_view text);

}  // namespace riparian

#endif  // RIPARIAN_DATA_HPP
