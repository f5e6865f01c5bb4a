#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fsmooth {

// Malformed content (non-numeric cell, ragged row, bad header).
struct CsvFormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Unreadable or unwritable file.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<double> values;  // row-major
  std::size_t rows = 0;
  std::size_t cols = 0;

  double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
  std::vector<double> column(std::size_t c) const;
  // Index of a header name, or npos.
  std::size_t find_column(const std::string& name) const;
};

// First row is the header; every cell below it must parse as a double.
// Format errors carry 1-based row/column diagnostics.
CsvTable read_csv(const std::string& path);

// Values are written with 17 significant digits so a round trip is lossless.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

std::string format_value(double v);

}  // namespace fsmooth
