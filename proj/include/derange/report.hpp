#ifndef DERANGE_REPORT_HPP
#define DERANGE_REPORT_HPP

#include <string>
#include <vector>

namespace derange {

enum class OutputFormat { tsv, json, text };

OutputFormat parse_output_format(const std::string& name);

// Column-oriented report; the same rows serialize as TSV or JSON.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
};

std::string to_tsv(const Table& t);
std::string to_json(const Table& t);

}  // namespace derange

#endif
