#pragma once

#include <string>
#include <vector>

#include "spcavrp/covariance.hpp"
#include "spcavrp/errors.hpp"

namespace spcavrp {

/// Format a double with 17 significant digits ('%.17g', '.' decimal point),
/// which round-trips exactly.
std::string format_double(double value);

/// Parse errors carry the 1-based line number of the offending row.
class CsvError : public Error {
 public:
  CsvError(std::size_t line, const std::string& msg)
      : Error(msg), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Read an n x p numeric CSV (comma-separated, '.' decimal, optional header
/// row to skip). Rows are observations. Throws CsvError with a line number
/// on malformed input.
DataMatrix read_csv_matrix(const std::string& path, bool skip_header);

/// Write a matrix as CSV with 17 significant digits per entry.
void write_csv_matrix(const std::string& path, const Eigen::MatrixXd& values);

}  // namespace spcavrp
