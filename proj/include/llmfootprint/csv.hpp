#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "llmfootprint/errors.hpp"

namespace llmfp {

// All emitted numbers use 6 significant digits so repeated runs are
// byte-identical.
inline std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

namespace csv {

struct Row {
  std::vector<std::string> fields;
  std::size_t line = 0;  // 1-based, header included
};

inline std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(trim(cur));
  return out;
}

// Reads a CSV file, checks the header verbatim, and returns the data rows.
// Blank lines are skipped. No quoting support: fields here are model names
// and numbers.
inline std::vector<Row> read_file(const std::string& path, const std::string& expected_header) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  std::vector<Row> rows;
  std::string line;
  std::size_t lineno = 0;
  bool saw_header = false;
  const auto header_fields = split_line(expected_header);
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    auto fields = split_line(line);
    if (!saw_header) {
      if (fields != header_fields)
        throw ParseError(path + ":" + std::to_string(lineno) + ": bad header, expected '" +
                         expected_header + "'");
      saw_header = true;
      continue;
    }
    if (fields.size() != header_fields.size())
      throw ParseError(path + ":" + std::to_string(lineno) + ": expected " +
                       std::to_string(header_fields.size()) + " fields, got " +
                       std::to_string(fields.size()));
    rows.push_back({std::move(fields), lineno});
  }
  if (!saw_header) throw ParseError(path + ": empty file, header missing");
  return rows;
}

inline double parse_double(const std::string& field, const std::string& path, std::size_t line,
                           const std::string& column) {
  const std::string t = trim(field);
  double v = 0.0;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || p != t.data() + t.size())
    throw ParseError(path + ":" + std::to_string(line) + ": field '" + column +
                     "' is not a number: '" + field + "'");
  return v;
}

inline long parse_long(const std::string& field, const std::string& path, std::size_t line,
                       const std::string& column) {
  const std::string t = trim(field);
  long v = 0;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || p != t.data() + t.size())
    throw ParseError(path + ":" + std::to_string(line) + ": field '" + column +
                     "' is not an integer: '" + field + "'");
  return v;
}

class Writer {
 public:
  explicit Writer(std::string header) { out_ << header << "\n"; }

  void row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out_ << ",";
      out_ << fields[i];
    }
    out_ << "\n";
  }

  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
};

}  // namespace csv

// Writes text to a file, failing loudly rather than silently truncating.
inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError(path + ": cannot open for writing");
  out << content;
  if (!out) throw ParseError(path + ": write failed");
}

}  // namespace llmfp
