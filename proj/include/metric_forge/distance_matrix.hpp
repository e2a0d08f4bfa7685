#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "metric_forge/error.hpp"

namespace metric_forge {

/// Ordered list of distinct point labels.
class PointSet {
 public:
  PointSet() = default;

  explicit PointSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
    std::unordered_set<std::string> seen;
    for (const auto& label : labels_) {
      if (!seen.insert(label).second) {
        throw MalformedInput("duplicate point label '" + label + "'");
      }
    }
  }

  /// Labels "0", "1", ..., "n-1".
  static PointSet indexed(std::size_t n) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    return PointSet(std::move(labels));
  }

  std::size_t size() const noexcept { return labels_.size(); }
  const std::string& operator[](std::size_t i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  std::vector<std::string> labels_;
};

/// Dense n x n table of pairwise distances over a PointSet.
///
/// Construction only enforces structural soundness: square shape, finite and
/// nonnegative entries. Symmetry and identity of indiscernibles are axioms and
/// are reported by check_point_axioms rather than rejected here, so that
/// broken samples can still be inspected.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;

  DistanceMatrix(PointSet points, std::vector<double> row_major)
      : points_(std::move(points)), d_(std::move(row_major)) {
    const std::size_t n = points_.size();
    if (d_.size() != n * n) {
      throw MalformedInput("distance table has " + std::to_string(d_.size()) +
                           " entries, expected " + std::to_string(n * n));
    }
    for (std::size_t k = 0; k < d_.size(); ++k) {
      const double v = d_[k];
      if (!std::isfinite(v)) {
        throw MalformedInput("non-finite distance at (" + std::to_string(k / n) +
                             "," + std::to_string(k % n) + ")");
      }
      if (v < 0.0) {
        throw MalformedInput("negative distance at (" + std::to_string(k / n) +
                             "," + std::to_string(k % n) + ")");
      }
    }
  }

  /// Builds from nested rows; rejects ragged input.
  static DistanceMatrix from_rows(PointSet points,
                                  const std::vector<std::vector<double>>& rows) {
    const std::size_t n = points.size();
    if (rows.size() != n) {
      throw MalformedInput("expected " + std::to_string(n) + " rows, got " +
                           std::to_string(rows.size()));
    }
    std::vector<double> flat;
    flat.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      if (rows[i].size() != n) {
        throw MalformedInput("row " + std::to_string(i) + " has " +
                             std::to_string(rows[i].size()) + " entries, expected " +
                             std::to_string(n));
      }
      flat.insert(flat.end(), rows[i].begin(), rows[i].end());
    }
    return DistanceMatrix(std::move(points), std::move(flat));
  }

  static DistanceMatrix from_rows(const std::vector<std::vector<double>>& rows) {
    return from_rows(PointSet::indexed(rows.size()), rows);
  }

  /// Builds d(i,j) = f(i,j) for i != j and 0 on the diagonal.
  template <typename F>
  static DistanceMatrix generate(PointSet points, F&& f) {
    const std::size_t n = points.size();
    std::vector<double> flat(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j) flat[i * n + j] = f(i, j);
      }
    }
    return DistanceMatrix(std::move(points), std::move(flat));
  }

  std::size_t size() const noexcept { return points_.size(); }
  const PointSet& points() const noexcept { return points_; }

  double operator()(std::size_t i, std::size_t j) const noexcept {
    return d_[i * points_.size() + j];
  }

  std::span<const double> row(std::size_t i) const noexcept {
    return {d_.data() + i * points_.size(), points_.size()};
  }

  std::span<const double> data() const noexcept { return d_; }

  /// Largest entry, 0 for n <= 1.
  double max_entry() const noexcept {
    double m = 0.0;
    for (double v : d_) m = v > m ? v : m;
    return m;
  }

  /// Smallest strictly positive entry, 0 if there is none.
  double min_positive_entry() const noexcept {
    double m = 0.0;
    for (double v : d_) {
      if (v > 0.0 && (m == 0.0 || v < m)) m = v;
    }
    return m;
  }

  /// Returns a copy with one entry replaced; symmetric partner untouched.
  DistanceMatrix with_entry(std::size_t i, std::size_t j, double value) const {
    auto copy = d_;
    copy[i * points_.size() + j] = value;
    return DistanceMatrix(points_, std::move(copy));
  }

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  PointSet points_;
  std::vector<double> d_;
};

}  // namespace metric_forge
