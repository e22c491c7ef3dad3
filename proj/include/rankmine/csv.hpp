#pragma once

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "rankmine/common.hpp"
#include "rankmine/data.hpp"

namespace rankmine {
namespace detail {

inline std::string trim_ws(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(trim_ws(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  cells.push_back(trim_ws(cur));
  return cells;
}

inline std::vector<std::vector<std::string>> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  std::vector<std::vector<std::string>> out;
  std::string line;
  while (std::getline(in, line)) {
    if (trim_ws(line).empty()) continue;
    out.push_back(split_csv_line(line));
  }
  if (out.empty()) throw ParseError("empty file: " + path);
  return out;
}

inline double parse_double(const std::string& cell, std::size_t row, std::size_t col) {
  double v = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last)
    throw ParseError("row " + std::to_string(row) + ", column " + std::to_string(col) +
                     ": not a number: '" + cell + "'");
  return v;
}

}  // namespace detail

/// Loads a matrix of sampled relative effects. First row holds the treatment
/// names; every following row holds one finite real per treatment. Higher-
/// is-better inputs are negated so that downstream code sees a single
/// lower-is-better convention.
inline SampleMatrix load_effects_csv(const std::string& path, Direction direction) {
  auto cells = detail::read_csv(path);
  SampleMatrix m;
  m.labels = cells[0];
  m.input_direction = direction;
  if (m.labels.size() < 2)
    throw ParseError(path + ": need at least 2 treatment columns, got " +
                     std::to_string(m.labels.size()));
  for (std::size_t r = 1; r < cells.size(); ++r) {
    if (cells[r].size() != m.labels.size())
      throw ParseError(path + ": row " + std::to_string(r + 1) + " has " +
                       std::to_string(cells[r].size()) + " cells, expected " +
                       std::to_string(m.labels.size()));
    std::vector<double> row;
    row.reserve(m.labels.size());
    for (std::size_t c = 0; c < cells[r].size(); ++c) {
      double v = detail::parse_double(cells[r][c], r + 1, c + 1);
      if (!std::isfinite(v))
        throw ParseError(path + ": row " + std::to_string(r + 1) + ", column " +
                         std::to_string(c + 1) + ": non-finite value");
      row.push_back(direction == Direction::HigherIsBetter ? -v : v);
    }
    m.values.push_back(std::move(row));
  }
  m.validate();
  return m;
}

/// Loads a matrix of observed hierarchies: the first row is a rank header
/// (ignored) and every other row lists treatment names from rank 1 to rank n.
/// Treatment labels are the sorted names of the first data row.
inline RankMatrix load_ranks_csv(const std::string& path) {
  auto cells = detail::read_csv(path);
  if (cells.size() < 2) throw ParseError(path + ": no hierarchy rows");
  RankMatrix rm;
  rm.labels = cells[1];
  std::sort(rm.labels.begin(), rm.labels.end());
  const std::size_t n = rm.labels.size();
  if (n < 2) throw ParseError(path + ": need at least 2 treatments");
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (rm.labels[i] == rm.labels[i + 1])
      throw ParseError(path + ": duplicate treatment name: " + rm.labels[i]);
  auto index_of = [&](const std::string& name, std::size_t row) {
    auto it = std::lower_bound(rm.labels.begin(), rm.labels.end(), name);
    if (it == rm.labels.end() || *it != name)
      throw ParseError(path + ": row " + std::to_string(row) +
                       ": unknown treatment: '" + name + "'");
    return static_cast<int>(it - rm.labels.begin());
  };
  for (std::size_t r = 1; r < cells.size(); ++r) {
    if (cells[r].size() != n)
      throw ParseError(path + ": row " + std::to_string(r + 1) + " has " +
                       std::to_string(cells[r].size()) + " cells, expected " +
                       std::to_string(n));
    std::vector<int> row;
    std::vector<bool> seen(n, false);
    for (const auto& cell : cells[r]) {
      int t = index_of(cell, r + 1);
      if (seen[t])
        throw ParseError(path + ": row " + std::to_string(r + 1) +
                         ": treatment repeated: '" + cell + "'");
      seen[t] = true;
      row.push_back(t);
    }
    rm.rows.push_back(std::move(row));
  }
  return rm;
}

}  // namespace rankmine
