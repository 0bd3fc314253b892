#include "derange/report.hpp"

#include "json.hpp"

#include "derange/errors.hpp"

namespace derange {

OutputFormat parse_output_format(const std::string& name) {
  if (name == "tsv") return OutputFormat::tsv;
  if (name == "json") return OutputFormat::json;
  if (name == "text") return OutputFormat::text;
  throw Error("unknown output format '" + name + "'");
}

void Table::add_row(std::vector<std::string> row) {
  if (row.size() != columns.size())
    throw Error("row width does not match column count");
  rows.push_back(std::move(row));
}

std::string to_tsv(const Table& t) {
  std::string out;
  for (size_t i = 0; i < t.columns.size(); ++i) {
    if (i) out += '\t';
    out += t.columns[i];
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out += '\t';
      out += row[i];
    }
    out += '\n';
  }
  return out;
}

std::string to_json(const Table& t) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj;
    for (size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = row[i];
    rows.push_back(std::move(obj));
  }
  return rows.dump(2) + "\n";
}

}  // namespace derange
