#include "spcavrp/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace spcavrp {

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

DataMatrix read_csv_matrix(const std::string& path, bool skip_header) {
  std::ifstream in(path);
  if (!in) throw CsvError(0, "cannot open '" + path + "'");

  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_number = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line_number == 1 && skip_header) continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    std::vector<double> row;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      const std::size_t end = comma == std::string::npos ? line.size() : comma;
      // Trim surrounding spaces; from_chars is locale-independent.
      std::size_t field_begin = start;
      std::size_t field_end = end;
      while (field_begin < field_end && line[field_begin] == ' ') ++field_begin;
      while (field_end > field_begin && line[field_end - 1] == ' ') --field_end;
      double value = 0.0;
      const auto [ptr, ec] = std::from_chars(line.data() + field_begin,
                                             line.data() + field_end, value);
      if (ec != std::errc() || ptr != line.data() + field_end)
        throw CsvError(line_number,
                       "line " + std::to_string(line_number) +
                           ": malformed numeric field '" +
                           line.substr(start, end - start) + "'");
      row.push_back(value);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (width == 0) {
      width = row.size();
    } else if (row.size() != width) {
      throw CsvError(line_number, "line " + std::to_string(line_number) +
                                      ": expected " + std::to_string(width) +
                                      " fields, got " +
                                      std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw CsvError(line_number, "no data rows in '" + path + "'");

  Eigen::MatrixXd values(rows.size(), width);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < width; ++j)
      values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          rows[i][j];
  return DataMatrix::create(std::move(values));
}

void write_csv_matrix(const std::string& path, const Eigen::MatrixXd& values) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
      if (j > 0) out << ',';
      out << format_double(values(i, j));
    }
    out << '\n';
  }
}

}  // namespace spcavrp
