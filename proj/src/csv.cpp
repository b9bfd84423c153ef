#include "smoothci/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

namespace smoothci {

namespace {

std::string_view trim(std::string_view s)
{
  constexpr std::string_view ws = " \t\r";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos)
    return {};
  const auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

}  // namespace

Eigen::VectorXd read_series_csv(std::istream& in)
{
  std::string line;
  if (!std::getline(in, line))
    throw CsvError("empty input: expected a header row 'y'");
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0)
    line.erase(0, 3);
  if (trim(line) != "y")
    throw CsvError("header must be exactly 'y' (got '" + std::string(trim(line)) + "')", { 1 });

  std::vector<double> values;
  std::vector<std::size_t> bad_rows;
  std::vector<std::string> lines;
  while (std::getline(in, line))
    lines.push_back(std::move(line));
  // a trailing newline yields no extra row; a trailing blank line is still blank
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t row = i + 2;
    const std::string_view field = trim(lines[i]);
    double v = 0.0;
    const auto* end = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(field.data(), end, v);
    if (field.empty() || ec != std::errc() || ptr != end || !std::isfinite(v)) {
      bad_rows.push_back(row);
      continue;
    }
    values.push_back(v);
  }
  if (!bad_rows.empty()) {
    std::ostringstream msg;
    msg << "blank or non-numeric value at line";
    msg << (bad_rows.size() > 1 ? "s " : " ");
    const std::size_t shown = std::min<std::size_t>(bad_rows.size(), 20);
    for (std::size_t i = 0; i < shown; ++i)
      msg << (i ? ", " : "") << bad_rows[i];
    if (shown < bad_rows.size())
      msg << " (and " << bad_rows.size() - shown << " more)";
    throw CsvError(msg.str(), std::move(bad_rows));
  }
  if (values.empty())
    throw CsvError("no data rows after header");
  return Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

Eigen::VectorXd read_series_csv_file(const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw CsvError("cannot open '" + path + "'");
  return read_series_csv(in);
}

void write_series_csv(std::ostream& out, const Eigen::VectorXd& y)
{
  out << "y\n";
  char buf[64];
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), y[i]);
    out.write(buf, ptr - buf);
    out.put('\n');
  }
}

}  // namespace smoothci
