#include "unruh_pair/emit.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

#include "unruh_pair/errors.hpp"

namespace unruh {
namespace {

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void Table::add_column(std::string name, std::vector<double> values) {
  if (!data.empty() && values.size() != rows()) {
    throw Error(ErrorCode::InvalidArgument, "column " + name + " has the wrong length");
  }
  columns.push_back(std::move(name));
  data.push_back(std::move(values));
}

std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out += ',';
    out += table.columns[c];
  }
  out += '\n';
  for (std::size_t r = 0; r < table.rows(); ++r) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      if (c) out += ',';
      out += format_number(table.data[c][r]);
    }
    out += '\n';
  }
  return out;
}

std::string to_json_document(const Table& table, const RunConfig& config) {
  nlohmann::ordered_json doc;
  nlohmann::ordered_json meta = to_json(config);
  meta["version"] = kVersion;
  doc["meta"] = std::move(meta);
  nlohmann::ordered_json data = nlohmann::ordered_json::object();
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    data[table.columns[c]] = table.data[c];
  }
  doc["data"] = std::move(data);
  return doc.dump(2) + '\n';
}

std::string render(const Table& table, const RunConfig& config) {
  return config.format == "json" ? to_json_document(table, config) : to_csv(table);
}

void emit(const std::string& content, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << content << std::flush;
    if (!std::cout) throw Error(ErrorCode::Io, "failed writing to stdout");
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot open " + path + " for writing");
  out << content;
  out.close();
  if (!out) throw Error(ErrorCode::Io, "failed writing " + path);
}

}  // namespace unruh
