#include "coupler/csvio.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "coupler/errors.hpp"

namespace coupler {
namespace csv {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string format_double(double value) {
  char buf[48];
  const int len = std::snprintf(buf, sizeof(buf), "%.12g", value);
  std::string out(buf, buf + len);
  // enforce '.' regardless of locale
  for (char& c : out)
    if (c == ',') c = '.';
  return out;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(trim(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  fields.push_back(trim(current));
  return fields;
}

Table read_table(const std::string& path, const std::string& expected_header) {
  std::ifstream file(path);
  if (!file) throw IoError("cannot open '" + path + "' for reading");

  Table table;
  std::string line;
  std::size_t line_no = 0;

  if (!std::getline(file, line))
    throw ParseError(path + ": empty file, expected a header line");
  ++line_no;
  std::string header = trim(line);
  if (!expected_header.empty() && header != expected_header)
    throw ParseError(path + ":1: expected header '" + expected_header +
                     "', found '" + header + "'");
  table.header = split_line(header);

  while (std::getline(file, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::vector<std::string> fields = split_line(line);
    if (fields.size() != table.header.size())
      throw ParseError(path + ":" + std::to_string(line_no) + ": expected " +
                       std::to_string(table.header.size()) + " columns, found " +
                       std::to_string(fields.size()));
    std::vector<double> row(fields.size());
    for (std::size_t i = 0; i < fields.size(); ++i) {
      const std::string& f = fields[i];
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc() || ptr != f.data() + f.size())
        throw ParseError(path + ":" + std::to_string(line_no) +
                         ": cannot parse '" + f + "' as a number");
      row[i] = v;
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

void write_table(const std::string& path, const std::string& header,
                 const std::vector<std::vector<double>>& rows) {
  std::ofstream file(path);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  file << header << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) file << ',';
      file << format_double(row[i]);
    }
    file << '\n';
  }
  if (!file) throw IoError("error while writing '" + path + "'");
}

}  // namespace csv
}  // namespace coupler
