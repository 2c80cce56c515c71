#include "riparian/data.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace riparian {

using json = nlohmann::ordered_json;

bool BasinDataset::operator==(const BasinDataset& other) const {
  return network == other.network && inflows == other.inflows &&
         withdrawals == other.withdrawals && provenance == other.provenance;
}

namespace {

[[noreturn]] void parse_error(const std::string& where, const std::string& why) {
  throw Error(ErrorCode::ParseError, where + ": " + why);
}

struct AgentRow {
  long id;
  std::string name;
  std::optional<long> successor;
  Rational inflow;
  std::optional<Rational> withdrawal;
};

BasinDataset assemble(std::vector<AgentRow> rows, bool has_withdrawals,
                      std::vector<std::string> provenance) {
  std::sort(rows.begin(), rows.end(), [](const AgentRow& a, const AgentRow& b) { return a.id < b.id; });
  const auto n = static_cast<long>(rows.size());
  for (long k = 0; k < n; ++k) {
    if (rows[static_cast<std::size_t>(k)].id != k + 1) {
      parse_error("agents", "ids must be exactly 1.." + std::to_string(n));
    }
  }

  std::vector<std::optional<Index>> successors;
  std::vector<std::string> labels;
  QVector inflows(n);
  QVector withdrawals(n);
  for (long k = 0; k < n; ++k) {
    const auto& row = rows[static_cast<std::size_t>(k)];
    successors.push_back(row.successor ? std::optional<Index>(*row.successor - 1) : std::nullopt);
    labels.push_back(row.name);
    inflows(k) = row.inflow;
    if (has_withdrawals) withdrawals(k) = *row.withdrawal;
  }
  RiverNetwork network(std::move(successors), std::move(labels));
  BasinDataset dataset{std::move(network), std::move(inflows), std::nullopt, std::move(provenance)};
  if (has_withdrawals) dataset.withdrawals = std::move(withdrawals);
  return dataset;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto at = line.find(sep, start);
    fields.push_back(line.substr(start, at - start));
    if (at == std::string_view::npos) break;
    start = at + 1;
  }
  return fields;
}

long parse_id(std::string_view text, const std::string& where) {
  const Rational value = [&] {
    try {
      return parse_quantity(text);
    } catch (const Error&) {
      parse_error(where, "bad agent id '" + std::string(text) + "'");
    }
  }();
  if (boost::multiprecision::denominator(value) != 1 || value < 1 || value > 1000000) {
    parse_error(where, "bad agent id '" + std::string(text) + "'");
  }
  return boost::multiprecision::numerator(value).convert_to<long>();
}

Rational parse_number(std::string_view text, const std::string& where) {
  try {
    return parse_quantity(text);
  } catch (const Error& e) {
    parse_error(where, e.what());
  }
}

BasinDataset parse_csv(std::string_view text) {
  std::vector<std::string> provenance;
  std::vector<AgentRow> rows;
  std::optional<bool> has_withdrawals;

  std::size_t line_number = 0;
  for (std::string_view rest = text; !rest.empty();) {
    const auto end = rest.find('\n');
    std::string_view line = rest.substr(0, end);
    rest = end == std::string_view::npos ? std::string_view{} : rest.substr(end + 1);
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const std::string where = "line " + std::to_string(line_number);

    if (!has_withdrawals) {
      if (line.starts_with("#")) {
        line.remove_prefix(1);
        if (line.starts_with(" ")) line.remove_prefix(1);
        provenance.emplace_back(line);
        continue;
      }
      if (line == "id,name,successor,inflow") {
        has_withdrawals = false;
      } else if (line == "id,name,successor,inflow,withdrawal") {
        has_withdrawals = true;
      } else {
        parse_error(where, "expected header id,name,successor,inflow[,withdrawal]");
      }
      continue;
    }
    if (line.empty()) continue;

    const auto fields = split(line, ',');
    const std::size_t expected = *has_withdrawals ? 5 : 4;
    if (fields.size() != expected) {
      parse_error(where, "expected " + std::to_string(expected) + " fields, got " +
                             std::to_string(fields.size()));
    }
    AgentRow row{parse_id(fields[0], where), std::string(fields[1]), std::nullopt,
                 parse_number(fields[3], where + ", inflow"), std::nullopt};
    if (!fields[2].empty()) row.successor = parse_id(fields[2], where);
    if (*has_withdrawals) row.withdrawal = parse_number(fields[4], where + ", withdrawal");
    rows.push_back(std::move(row));
  }
  if (!has_withdrawals) parse_error("line 1", "missing header");
  return assemble(std::move(rows), *has_withdrawals, std::move(provenance));
}

Rational json_number(const json& value, const std::string& where) {
  if (value.is_string()) return parse_number(value.get<std::string>(), where);
  if (value.is_number_unsigned() || value.is_number_integer() || value.is_number_float()) {
    return parse_number(value.dump(), where);
  }
  parse_error(where, "expected a number or numeric string");
}

BasinDataset parse_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    parse_error("$", e.what());
  }
  if (!doc.is_object() || !doc.contains("agents") || !doc["agents"].is_array()) {
    parse_error("$", "expected an object with an 'agents' array");
  }

  std::vector<std::string> provenance;
  if (doc.contains("provenance")) {
    if (!doc["provenance"].is_array()) parse_error("$.provenance", "expected an array of strings");
    for (const auto& note : doc["provenance"]) {
      if (!note.is_string()) parse_error("$.provenance", "expected an array of strings");
      provenance.push_back(note.get<std::string>());
    }
  }

  std::vector<AgentRow> rows;
  std::optional<bool> has_withdrawals;
  const auto& agents = doc["agents"];
  for (std::size_t k = 0; k < agents.size(); ++k) {
    const auto& agent = agents[k];
    const std::string where = "$.agents[" + std::to_string(k) + "]";
    if (!agent.is_object()) parse_error(where, "expected an object");
    if (!agent.contains("id") || !agent["id"].is_number_integer()) {
      parse_error(where + ".id", "expected an integer");
    }
    if (!agent.contains("name") || !agent["name"].is_string()) {
      parse_error(where + ".name", "expected a string");
    }
    if (!agent.contains("inflow")) parse_error(where + ".inflow", "missing");

    AgentRow row{agent["id"].get<long>(), agent["name"].get<std::string>(), std::nullopt,
                 json_number(agent["inflow"], where + ".inflow"), std::nullopt};
    if (row.id < 1) parse_error(where + ".id", "ids start at 1");
    if (agent.contains("successor") && !agent["successor"].is_null()) {
      if (!agent["successor"].is_number_integer()) {
        parse_error(where + ".successor", "expected an integer or null");
      }
      row.successor = agent["successor"].get<long>();
    }
    const bool with = agent.contains("withdrawal");
    if (has_withdrawals && *has_withdrawals != with) {
      parse_error(where + ".withdrawal", "either every agent or none has a withdrawal");
    }
    has_withdrawals = with;
    if (with) row.withdrawal = json_number(agent["withdrawal"], where + ".withdrawal");
    rows.push_back(std::move(row));
  }
  return assemble(std::move(rows), has_withdrawals.value_or(false), std::move(provenance));
}

void require_plain(const std::string& text, const char* what) {
  if (text.find_first_of(",\n\r") != std::string::npos) {
    throw Error(ErrorCode::BadParameter,
                std::string(what) + " '" + text + "' cannot be written to CSV");
  }
}

}  // namespace

BasinDataset parse_problem(std::string_view text, DocumentFormat format) {
  return format == DocumentFormat::Csv ? parse_csv(text) : parse_json(text);
}

std::string emit_problem(const BasinDataset& dataset, DocumentFormat format) {
  const auto& net = dataset.network;
  const Index n = net.size();
  if (format == DocumentFormat::Json) {
    json doc;
    doc["agents"] = json::array();
    for (Index i = 0; i < n; ++i) {
      json agent;
      agent["id"] = i + 1;
      agent["name"] = net.label(i);
      const auto next = net.successor(i);
      agent["successor"] = next ? json(*next + 1) : json(nullptr);
      agent["inflow"] = to_exact_string(dataset.inflows(i));
      if (dataset.withdrawals) agent["withdrawal"] = to_exact_string((*dataset.withdrawals)(i));
      doc["agents"].push_back(std::move(agent));
    }
    if (!dataset.provenance.empty()) doc["provenance"] = dataset.provenance;
    return doc.dump(2) + "\n";
  }

  std::ostringstream out;
  for (const auto& note : dataset.provenance) {
    if (note.find('\n') != std::string::npos) {
      throw Error(ErrorCode::BadParameter, "provenance notes must be single lines");
    }
    out << "# " << note << "\n";
  }
  out << "id,name,successor,inflow" << (dataset.withdrawals ? ",withdrawal" : "") << "\n";
  for (Index i = 0; i < n; ++i) {
    require_plain(net.label(i), "agent name");
    const auto next = net.successor(i);
    out << (i + 1) << ',' << net.label(i) << ',' << (next ? std::to_string(*next + 1) : "") << ','
        << to_exact_string(dataset.inflows(i));
    if (dataset.withdrawals) out << ',' << to_exact_string((*dataset.withdrawals)(i));
    out << "\n";
  }
  return out.str();
}

BasinDataset load_problem(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  const bool is_json =
      path.extension() == ".json" || (first != std::string::npos && text[first] == '{');
  return parse_problem(text, is_json ? DocumentFormat::Json : DocumentFormat::Csv);
}

BasinDataset nile_dataset() {
  //          Tanzania Uganda SSudan Ethiopia Sudan  Egypt
  //  index       0       1      2       3      4      5
  RiverNetwork network({1, 2, 4, 4, 5, std::nullopt},
                       {"Tanzania", "Uganda", "South Sudan", "Ethiopia", "Sudan", "Egypt"});
  QVector inflows(6);
  QVector withdrawals(6);
  const char* inflow_text[] = {"16.8", "16.2", "17.6", "52.6", "0.7", "0"};
  const char* withdrawal_text[] = {"5.18", "0.64", "0.66", "10.55", "26.93", "77.7"};
  for (Index i = 0; i < 6; ++i) {
    inflows(i) = parse_quantity(inflow_text[i]);
    withdrawals(i) = parse_quantity(withdrawal_text[i]);
  }
  return BasinDataset{
      std::move(network),
      std::move(inflows),
      std::move(withdrawals),
      {
          "Source: FAO AQUASTAT; inflows and withdrawals in km^3/year.",
          "Lake Victoria contributes 33; Tanzania holds 51% of its surface (0.51 x 33 = 16.83, "
          "stored as the tabulated 16.8).",
          "Uganda: 43% of Lake Victoria (14.19) plus about 2 from Lake Albert, tabulated as 16.2.",
          "South Sudan: Bahr al Ghazal 1.5 + Pibor 3.1 + Baro 13 = 17.6.",
          "Ethiopia: Blue Nile from Lake Tana, 52.6.",
          "Sudan: Atbara River, 0.7. Egypt contributes no inflow.",
          "Blue Nile (Ethiopia) and White Nile (Tanzania, Uganda, South Sudan) meet in Sudan at "
          "Khartoum.",
          "Withdrawals are AQUASTAT total freshwater withdrawal and sum to 121.66, above the "
          "103.9 total inflow.",
      }};
}

TableFormat parse_table_format(std::string_view text) {
  if (text == "text") return TableFormat::Text;
  if (text == "csv") return TableFormat::Csv;
  if (text == "json") return TableFormat::Json;
  throw Error(ErrorCode::ParseError, "unknown format '" + std::string(text) + "'");
}

std::string emit_table(const RiverNetwork& network, std::span<const NamedAllocation> columns,
                       TableFormat format, int decimals) {
  const Index n = network.size();
  for (const auto& column : columns) {
    if (column.amounts.size() != n) {
      throw Error(ErrorCode::MixedNetworks, "column '" + column.name + "' has " +
                                                std::to_string(column.amounts.size()) +
                                                " entries for " + std::to_string(n) + " agents");
    }
  }

  if (format == TableFormat::Json) {
    json doc;
    doc["agents"] = json::array();
    for (Index i = 0; i < n; ++i) doc["agents"].push_back(network.label(i));
    doc["columns"] = json::array();
    for (const auto& column : columns) {
      json values = json::array();
      for (Index i = 0; i < n; ++i) values.push_back(to_exact_string(column.amounts(i)));
      doc["columns"].push_back({{"name", column.name}, {"values", std::move(values)}});
    }
    return doc.dump(2) + "\n";
  }

  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> header{"agent"};
  for (const auto& column : columns) header.push_back(column.name);
  cells.push_back(std::move(header));
  for (Index i = 0; i < n; ++i) {
    std::vector<std::string> row{network.label(i)};
    for (const auto& column : columns) row.push_back(format_decimal(column.amounts(i), decimals));
    cells.push_back(std::move(row));
  }

  std::ostringstream out;
  if (format == TableFormat::Csv) {
    for (const auto& row : cells) {
      for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << row[c];
      out << "\n";
    }
    return out.str();
  }

  std::vector<std::size_t> width(cells.front().size(), 0);
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      const auto pad = std::string(width[c] - row[c].size(), ' ');
      if (c == 0) {
        out << row[c] << pad;
      } else {
        out << "  " << pad << row[c];
      }
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace riparian
