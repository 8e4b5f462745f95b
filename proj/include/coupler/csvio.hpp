#ifndef COUPLER_CSVIO_HPP
#define COUPLER_CSVIO_HPP

#include <string>
#include <vector>

namespace coupler {
namespace csv {

// Locale-independent float formatting with 12 significant digits.
std::string format_double(double value);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

// Reads a numeric CSV with a single header line. When expected_header is
// non-empty the file's header must match it exactly (after trimming).
// Throws ParseError naming the offending line, or IoError.
Table read_table(const std::string& path, const std::string& expected_header = "");

void write_table(const std::string& path, const std::string& header,
                 const std::vector<std::vector<double>>& rows);

std::vector<std::string> split_line(const std::string& line);

}  // namespace csv
}  // namespace coupler

#endif  // COUPLER_CSVIO_HPP
