#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "json.hpp"

#include "conez/errors.hpp"
#include "conez/matrix.hpp"

namespace conez::io {

/// One entry at 17 significant digits, enough for an exact double round trip.
inline std::string format_entry(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

inline double parse_entry(std::string_view field, const std::string& where) {
  // Trim surrounding blanks; from_chars wants the bare literal.
  while (!field.empty() && (field.front() == ' ' || field.front() == '\t'))
    field.remove_prefix(1);
  while (!field.empty() && (field.back() == ' ' || field.back() == '\t' || field.back() == '\r'))
    field.remove_suffix(1);
  double v = 0.0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc{} || res.ptr != field.data() + field.size())
    throw IoError(where + ": cannot parse entry '" + std::string(field) + "'");
  return v;
}

inline std::vector<std::vector<double>> parse_csv_rows(const std::string& text,
                                                       const std::string& where) {
  std::vector<std::vector<double>> rows;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    std::string_view line(text.data() + pos, eol - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos = eol + 1;
    if (line.empty()) continue;  // blank lines (e.g. the trailing one) are not rows
    std::vector<double> row;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      const std::size_t end = (comma == std::string_view::npos) ? line.size() : comma;
      row.push_back(parse_entry(line.substr(start, end - start), where));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw IoError(where + ": no rows");
  return rows;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read error on '" + path + "'");
  return std::move(buf).str();
}

inline void spill(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IoError("write error on '" + path + "'");
}

inline bool has_json_suffix(const std::string& path) {
  static constexpr std::string_view suffix = ".json";
  return path.size() >= suffix.size() &&
         path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace detail

inline std::string matrix_csv(const Matrix& m) {
  std::string out;
  for (int i = 0; i < m.dim(); ++i) {
    for (int j = 0; j < m.dim(); ++j) {
      if (j) out += ',';
      out += format_entry(m(i, j));
    }
    out += '\n';
  }
  return out;
}

inline std::string vector_csv(const Vector& x) {
  std::string out;
  for (double v : x) {
    out += format_entry(v);
    out += '\n';
  }
  return out;
}

inline nlohmann::ordered_json matrix_json(const Matrix& m) {
  nlohmann::ordered_json j;
  j["n"] = m.dim();
  auto rows = nlohmann::ordered_json::array();
  for (int i = 0; i < m.dim(); ++i) {
    auto row = nlohmann::ordered_json::array();
    for (int j2 = 0; j2 < m.dim(); ++j2) row.push_back(m(i, j2));
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j;
}

inline Matrix matrix_from_json(const nlohmann::json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("n") || !j.contains("rows"))
    throw IoError(where + ": expected an object with keys n and rows");
  if (!j["n"].is_number_integer()) throw IoError(where + ": n must be an integer");
  const auto n = j["n"].get<long long>();
  if (!j["rows"].is_array()) throw IoError(where + ": rows must be an array");
  std::vector<std::vector<double>> rows;
  for (const auto& row : j["rows"]) {
    if (!row.is_array()) throw IoError(where + ": each row must be an array");
    std::vector<double> r;
    for (const auto& entry : row) {
      if (!entry.is_number()) throw IoError(where + ": entries must be numbers");
      r.push_back(entry.get<double>());
    }
    rows.push_back(std::move(r));
  }
  if (n < 1 || rows.size() != static_cast<std::size_t>(n))
    throw IoError(where + ": n = " + std::to_string(n) + " but rows holds " +
                  std::to_string(rows.size()));
  try {
    return Matrix::from_rows(rows);
  } catch (const Error& e) {
    throw IoError(where + ": " + e.what());
  }
}

/// Reads a square matrix; a .json suffix selects {"n":…, "rows":[[…]]}, any
/// other name is treated as CSV (one row per line, comma-separated).
inline Matrix read_matrix(const std::string& path) {
  const std::string text = detail::slurp(path);
  if (detail::has_json_suffix(path)) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw IoError(path + ": " + e.what());
    }
    return matrix_from_json(j, path);
  }
  try {
    return Matrix::from_rows(detail::parse_csv_rows(text, path));
  } catch (const IoError&) {
    throw;
  } catch (const Error& e) {
    throw IoError(path + ": " + e.what());
  }
}

/// Reads a vector from CSV laid out either as a column (n lines of one entry)
/// or a single row.
inline Vector read_vector(const std::string& path) {
  const auto rows = detail::parse_csv_rows(detail::slurp(path), path);
  Vector x;
  if (rows.size() == 1) {
    x = rows.front();
  } else {
    for (const auto& row : rows) {
      if (row.size() != 1)
        throw IoError(path + ": expected a single row or a single column of entries");
      x.push_back(row.front());
    }
  }
  for (double v : x)
    if (!std::isfinite(v)) throw IoError(path + ": non-finite entry");
  return x;
}

inline void write_matrix_csv(const std::string& path, const Matrix& m) {
  detail::spill(path, matrix_csv(m));
}

inline void write_matrix_json(const std::string& path, const Matrix& m) {
  detail::spill(path, matrix_json(m).dump(2) + "\n");
}

inline void write_vector_csv(const std::string& path, const Vector& x) {
  detail::spill(path, vector_csv(x));
}

inline void write_text(const std::string& path, const std::string& text) {
  detail::spill(path, text);
}

}  // namespace conez::io
