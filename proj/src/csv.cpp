#include "fsmooth/csv.hpp"

#include <cerrno>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace fsmooth {

std::vector<double> CsvTable::column(std::size_t c) const {
  std::vector<double> out(rows);
  for (std::size_t r = 0; r < rows; ++r) out[r] = at(r, c);
  return out;
}

std::size_t CsvTable::find_column(const std::string& name) const {
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == name) return c;
  }
  return static_cast<std::size_t>(-1);
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");

  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) {
    throw CsvFormatError("'" + path + "' is empty; expected a header row");
  }
  for (const auto& cell : split_line(line)) table.header.push_back(trim(cell));
  table.cols = table.header.size();
  if (table.cols == 0) throw CsvFormatError("'" + path + "': empty header row");

  std::size_t row_no = 1;
  while (std::getline(in, line)) {
    ++row_no;
    if (trim(line).empty()) continue;
    const std::vector<std::string> cells = split_line(line);
    if (cells.size() != table.cols) {
      throw CsvFormatError("'" + path + "': row " + std::to_string(row_no) + " has " +
                           std::to_string(cells.size()) + " cells, expected " +
                           std::to_string(table.cols));
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const std::string cell = trim(cells[c]);
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
        throw CsvFormatError("'" + path + "': row " + std::to_string(row_no) +
                             ", column " + std::to_string(c + 1) + ": '" + cell +
                             "' is not a number");
      }
      table.values.push_back(v);
    }
    ++table.rows;
  }
  return table;
}

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c) out << ',';
    out << header[c];
  }
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      out << format_value(row[c]);
    }
    out << '\n';
  }
  if (!out) throw IoError("failed while writing '" + path + "'");
}

}  // namespace fsmooth
