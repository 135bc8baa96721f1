#pragma once

#include <fstream>
#include <string>
#include <variant>
#include <vector>

namespace curvlayer {

// Shortest decimal form that round-trips a double.
std::string format_double(double v);

using CsvCell = std::variant<double, long long, std::string>;

// CSV file with a one-line schema header. Cells never carry timestamps.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& columns);
  void row(const std::vector<CsvCell>& cells);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::size_t columns_;
  std::ofstream out_;
};

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  int column(const std::string& name) const;  // -1 when absent
};

CsvTable read_csv(const std::string& path);

}  // namespace curvlayer
