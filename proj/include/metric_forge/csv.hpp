#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "metric_forge/distance_matrix.hpp"
#include "metric_forge/error.hpp"
#include "metric_forge/options.hpp"

namespace metric_forge {

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

inline double parse_number(std::string_view field, std::size_t row, std::size_t col) {
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double v = 0.0;
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, v);
  if (field.empty() || ec != std::errc{} || ptr != end) {
    throw MalformedInput("row " + std::to_string(row) + ", column " + std::to_string(col) +
                         ": '" + std::string(field) + "' is not a number");
  }
  return v;
}

}  // namespace detail

/// Reads the distance CSV format: a header of point labels, then n rows of
/// n numbers. Rejects ragged rows, non-numbers, NaN, negative values,
/// duplicate labels, and asymmetry beyond tol.abs.
inline DistanceMatrix read_distance_csv(std::istream& in, const Tolerances& tol = {},
                                        std::size_t max_points = kDefaultMaxPoints) {
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (!detail::trim(line).empty()) lines.push_back(std::move(line));
  }
  if (lines.empty()) throw MalformedInput("empty distance CSV");
  std::vector<std::string> labels;
  for (auto f : detail::split_fields(lines[0])) {
    if (f.empty()) throw MalformedInput("empty point label in header");
    labels.emplace_back(f);
  }
  const std::size_t n = labels.size();
  if (n > max_points) {
    throw InvalidParameter(std::to_string(n) + " points exceed the cap of " +
                           std::to_string(max_points));
  }
  if (lines.size() - 1 != n) {
    throw MalformedInput("header names " + std::to_string(n) + " points but " +
                         std::to_string(lines.size() - 1) + " rows follow");
  }
  std::vector<double> flat;
  flat.reserve(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    const auto fields = detail::split_fields(lines[r + 1]);
    if (fields.size() != n) {
      throw MalformedInput("row " + std::to_string(r) + " has " + std::to_string(fields.size()) +
                           " fields, expected " + std::to_string(n));
    }
    for (std::size_t c = 0; c < n; ++c) flat.push_back(detail::parse_number(fields[c], r, c));
  }
  DistanceMatrix d(PointSet(std::move(labels)), std::move(flat));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(d(i, j) - d(j, i)) > tol.abs) {
        throw MalformedInput("asymmetric entries at (" + std::to_string(i) + "," +
                             std::to_string(j) + "): " + std::to_string(d(i, j)) + " vs " +
                             std::to_string(d(j, i)));
      }
    }
  }
  return d;
}

inline DistanceMatrix read_distance_csv_file(const std::string& path, const Tolerances& tol = {},
                                             std::size_t max_points = kDefaultMaxPoints) {
  std::ifstream in(path);
  if (!in) throw MalformedInput("cannot open '" + path + "'");
  return read_distance_csv(in, tol, max_points);
}

/// Writes the same format with 17 significant digits per entry.
inline void write_distance_csv(std::ostream& out, const DistanceMatrix& d) {
  const std::size_t n = d.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& label = d.points()[i];
    if (label.find_first_of(",\n\r") != std::string::npos) {
      throw InvalidParameter("label '" + label + "' cannot be written to CSV");
    }
    out << (i ? "," : "") << label;
  }
  out << '\n';
  char buf[32];
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", d(i, j));
      out << (j ? "," : "") << buf;
    }
    out << '\n';
  }
}

inline void write_distance_csv_file(const std::string& path, const DistanceMatrix& d) {
  std::ofstream out(path);
  if (!out) throw InvalidParameter("cannot write '" + path + "'");
  write_distance_csv(out, d);
}

}  // namespace metric_forge
