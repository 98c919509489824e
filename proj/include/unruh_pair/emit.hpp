#pragma once

#include <string>
#include <vector>

#include "unruh_pair/run_config.hpp"

namespace unruh {

// Column-oriented numeric table; every command produces one.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> data;  // data[c][row]

  std::size_t rows() const { return data.empty() ? 0 : data.front().size(); }
  void add_column(std::string name, std::vector<double> values);
};

// Header row, then one line per row; values as %.17g, LF endings.
std::string to_csv(const Table& table);

// {"meta": {...config, "version"}, "data": {column: [values...]}}
std::string to_json_document(const Table& table, const RunConfig& config);

std::string render(const Table& table, const RunConfig& config);

// Writes to `path`, or stdout when it is empty or "-". Throws Error(Io).
void emit(const std::string& content, const std::string& path);

}  // namespace unruh
