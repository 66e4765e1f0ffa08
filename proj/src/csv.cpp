#include "protoselect/csv.hpp"

#include <cerrno>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <utility>

#include "protoselect/errors.hpp"

namespace protoselect {

namespace {

std::string trim(const std::string& s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && (s[begin] == ' ' || s[begin] == '\t' ||
                         s[begin] == '\r' || s[begin] == '\n')) {
    ++begin;
  }
  while (end > begin && (s[end - 1] == ' ' || s[end - 1] == '\t' ||
                         s[end - 1] == '\r' || s[end - 1] == '\n')) {
    --end;
  }
  return s.substr(begin, end - begin);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(trim(line.substr(start)));
      break;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return fields;
}

bool row_is_blank(const std::vector<std::string>& fields) {
  for (const auto& f : fields) {
    if (!f.empty()) return false;
  }
  return true;
}

}  // namespace

bool parses_as_number(const std::string& cell) {
  if (cell.empty()) return false;
  const char* begin = cell.c_str();
  char* end = nullptr;
  errno = 0;
  std::strtod(begin, &end);
  return end == begin + cell.size();
}

double parse_number(const std::string& cell, const std::string& file,
                    std::size_t line, std::size_t column) {
  const char* begin = cell.c_str();
  char* end = nullptr;
  errno = 0;
  double value = std::strtod(begin, &end);
  if (cell.empty() || end != begin + cell.size()) {
    throw DataError(file + ":" + std::to_string(line) + ": column " +
                    std::to_string(column) + ": expected a number, got \"" +
                    cell + "\"");
  }
  return value;
}

std::string format_double(double value) {
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc()) {
    // Cannot happen for finite doubles with this buffer size; fall back
    // to a fixed representation rather than return garbage.
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
  }
  return std::string(buffer, ptr);
}

CsvTable parse_csv_text(const std::string& text, std::string name) {
  CsvTable table;
  table.name = std::move(name);

  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> lines;  // original 1-based line of each kept row
  std::istringstream stream(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    auto fields = split_fields(line);
    if (row_is_blank(fields)) continue;
    rows.push_back(std::move(fields));
    lines.push_back(line_no);
  }
  if (rows.empty()) {
    throw DataError(table.name + ": file contains no data");
  }

  table.columns = rows[0].size();
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != table.columns) {
      throw DataError(table.name + ":" + std::to_string(lines[r]) +
                      ": expected " + std::to_string(table.columns) +
                      " columns, found " + std::to_string(rows[r].size()));
    }
  }

  // Header detection: some column must switch from non-numeric to numeric
  // between the first and second rows. A file of string labels only (no
  // such switch) is treated as data, as is a pure numeric matrix.
  bool header = false;
  if (rows.size() >= 2) {
    for (std::size_t c = 0; c < table.columns; ++c) {
      if (!parses_as_number(rows[0][c]) && parses_as_number(rows[1][c])) {
        header = true;
        break;
      }
    }
  }

  if (header) {
    table.header = std::move(rows[0]);
    rows.erase(rows.begin());
  }
  table.cells = std::move(rows);
  if (table.cells.empty()) {
    throw DataError(table.name + ": no data rows after the header");
  }
  return table;
}

CsvTable read_csv(const std::string& path) {
  return parse_csv_text(read_file(path), path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DataError("cannot open file: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    throw DataError("failed while reading file: " + path);
  }
  return buffer.str();
}

void write_file_atomic(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw DataError("cannot open file for writing: " + tmp);
    }
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.flush();
    if (!out) {
      throw DataError("failed while writing file: " + tmp);
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw DataError("cannot move temporary file into place: " + path);
  }
}

std::vector<std::string> read_label_lines(const std::string& path) {
  const std::string text = read_file(path);
  std::vector<std::string> labels;
  std::istringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) {
    std::string token = trim(line);
    if (!token.empty()) labels.push_back(std::move(token));
  }
  if (labels.empty()) {
    throw DataError(path + ": label file contains no labels");
  }
  return labels;
}

}  // namespace protoselect
