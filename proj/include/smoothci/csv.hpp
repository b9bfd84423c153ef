#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace smoothci {

//! Malformed series file. `rows` lists offending 1-based line numbers
//! (the header is line 1); empty for file-level problems.
class CsvError : public std::invalid_argument
{
public:
  CsvError(const std::string& what, std::vector<std::size_t> rows = {})
    : std::invalid_argument(what), rows_(std::move(rows))
  {
  }

  const std::vector<std::size_t>& rows() const noexcept { return rows_; }

private:
  std::vector<std::size_t> rows_;
};

//! Single-column CSV with header `y`, one decimal number per row. Blank or
//! non-numeric rows are rejected with their line numbers.
Eigen::VectorXd read_series_csv(std::istream& in);
Eigen::VectorXd read_series_csv_file(const std::string& path);

//! Header `y`, then one shortest round-trip decimal per row.
void write_series_csv(std::ostream& out, const Eigen::VectorXd& y);

}  // namespace smoothci
