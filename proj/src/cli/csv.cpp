#include "krpt/cli/csv.hpp"

#include <charconv>
#include <fstream>
#include <ostream>

#include "krpt/core/errors.hpp"

namespace krpt::cli {

std::string format_number(double value) {
  char buffer[32];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, result.ptr);
}

void Table::add_column(std::string name, const std::vector<double>& values) {
  if (rows.empty() && columns.empty()) rows.resize(values.size());
  if (values.size() != rows.size()) {
    throw Error(ErrorCode::InvalidArgument, "column '" + name + "' has the wrong length");
  }
  columns.push_back(std::move(name));
  for (std::size_t i = 0; i < values.size(); ++i) rows[i].push_back(values[i]);
}

void write_csv(std::ostream& out, const Table& table) {
  for (const auto& line : table.comments) out << "# " << line << '\n';
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    out << (c ? "," : "") << table.columns[c];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_number(row[c]);
    out << '\n';
  }
}

void write_csv(const std::string& path, const Table& table, std::ostream& fallback) {
  if (path.empty()) {
    write_csv(fallback, table);
    return;
  }
  std::ofstream file(path);
  if (!file) throw Error(ErrorCode::Io, "cannot write '" + path + "'");
  write_csv(file, table);
  if (!file) throw Error(ErrorCode::Io, "write to '" + path + "' failed");
}

}  // namespace krpt::cli
