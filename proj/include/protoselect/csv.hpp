#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace protoselect {

// One parsed CSV file: raw cells plus the detected header row, if any.
// Parsing keeps cells as text; numeric conversion happens at the point of
// use so diagnostics can name the file, line, and column.
struct CsvTable {
  std::string name;                             // path used in diagnostics
  std::vector<std::string> header;              // empty when no header row
  std::vector<std::vector<std::string>> cells;  // data rows, header excluded
  std::size_t columns = 0;

  bool has_header() const { return !header.empty(); }
  std::size_t rows() const { return cells.size(); }

  // 1-based line number of data row r in the original file, for messages.
  std::size_t line_of(std::size_t r) const {
    return r + (has_header() ? 2 : 1);
  }
};

// Parses comma-separated text with '.' as the decimal mark. Cells are
// trimmed of surrounding whitespace; blank lines are skipped. A header row
// is detected when some column has a non-numeric cell in the first row and
// a numeric cell in the second; this keeps plain numeric matrices and
// headered feature tables both working without a flag.
CsvTable parse_csv_text(const std::string& text, std::string name);

CsvTable read_csv(const std::string& path);

// True when the whole trimmed cell parses as a finite-or-not double.
bool parses_as_number(const std::string& cell);

// Strict conversion; throws DataError naming file, line, and column
// (both 1-based) when the cell is not a number.
double parse_number(const std::string& cell, const std::string& file,
                    std::size_t line, std::size_t column);

// Shortest decimal text that parses back to exactly the same double.
std::string format_double(double value);

// Reads a whole file; throws DataError when the path cannot be opened.
std::string read_file(const std::string& path);

// Writes via a temporary file in the same directory, then renames it over
// the target, so readers never observe a half-written artifact.
void write_file_atomic(const std::string& path, const std::string& text);

// One label per line, whitespace-trimmed, blank lines skipped. Used when
// the dataset is a dissimilarity or kernel matrix with no label column.
std::vector<std::string> read_label_lines(const std::string& path);

}  // namespace protoselect
