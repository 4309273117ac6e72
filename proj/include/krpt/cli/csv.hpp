#ifndef KRPT_CLI_CSV_HPP
#define KRPT_CLI_CSV_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace krpt::cli {

/// Shortest text that parses back to the same double, at most 17 significant digits.
std::string format_number(double value);

/// A numeric table preceded by `# `-prefixed comment lines.
struct Table {
  std::vector<std::string> comments;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add_column(std::string name, const std::vector<double>& values);
};

void write_csv(std::ostream& out, const Table& table);

/// Writes to `path`, or to `fallback` when path is empty. Throws Error(Io) on failure.
void write_csv(const std::string& path, const Table& table, std::ostream& fallback);

}  // namespace krpt::cli

#endif  // KRPT_CLI_CSV_HPP
