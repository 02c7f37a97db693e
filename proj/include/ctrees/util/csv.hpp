#pragma once

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ctrees {

// Deterministic CSV writer: fixed "%.12g" float formatting so identical
// data produces identical bytes. First row is the header, which should
// carry units, e.g. "avg_speed[m/s]".
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}

  static std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
  }

  void add_row(std::vector<std::string> cells) {
    if (cells.size() != header_.size()) {
      throw std::invalid_argument("csv: row width mismatch");
    }
    rows_.push_back(std::move(cells));
  }

  std::string to_string() const {
    std::string out = join(header_);
    for (const auto& r : rows_) out += join(r);
    return out;
  }

  void write_file(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("csv: cannot write " + path);
    out << to_string();
  }

  // Convenience for mixed rows built in place.
  class Row {
   public:
    Row& str(std::string s) {
      cells_.push_back(std::move(s));
      return *this;
    }
    Row& num(double x) { return str(format_double(x)); }
    Row& integer(long long x) { return str(std::to_string(x)); }
    std::vector<std::string> take() { return std::move(cells_); }

   private:
    std::vector<std::string> cells_;
  };

 private:
  static std::string join(const std::vector<std::string>& cells) {
    std::string line;
    for (size_t i = 0; i < cells.size(); ++i) {
      if (i) line += ',';
      line += cells[i];
    }
    line += '\n';
    return line;
  }

  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace ctrees
