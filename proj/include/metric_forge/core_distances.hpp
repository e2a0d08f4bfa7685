#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>

#include "metric_forge/axiom_report.hpp"
#include "metric_forge/b_action.hpp"
#include "metric_forge/distance_matrix.hpp"
#include "metric_forge/error.hpp"
#include "metric_forge/options.hpp"

namespace metric_forge {

/// Identity of indiscernibles: zero diagonal, positive off-diagonal entries.
inline AxiomReport check_identity(const DistanceMatrix& d, const Tolerances& tol = {}) {
  AxiomReport report;
  detail::ViolationSink sink(report, tol.max_witnesses);
  const std::size_t n = d.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = d(i, j);
      if (i == j && std::abs(v) > tol.abs) {
        sink.add({Axiom::identity, {i, i}, {}, v, 0.0, -std::abs(v)});
      } else if (i != j && v <= 0.0) {
        sink.add({Axiom::positivity, {i, j}, {}, v, 0.0, v});
      }
    }
  }
  report.checked = n * n;
  return report;
}

/// Symmetry; each offending pair is reported once with i < j.
inline AxiomReport check_symmetry(const DistanceMatrix& d, const Tolerances& tol = {}) {
  AxiomReport report;
  detail::ViolationSink sink(report, tol.max_witnesses);
  const std::size_t n = d.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double gap = std::abs(d(i, j) - d(j, i));
      if (gap > tol.abs) sink.add({Axiom::symmetry, {i, j}, {}, d(i, j), d(j, i), -gap});
    }
  }
  report.checked = n * (n > 0 ? n - 1 : 0) / 2;
  return report;
}

/// Identity, positivity off the diagonal, and symmetry.
inline AxiomReport check_point_axioms(const DistanceMatrix& d, const Tolerances& tol = {}) {
  AxiomReport report = check_identity(d, tol);
  report.merge(check_symmetry(d, tol), tol.max_witnesses);
  return report;
}

struct RelaxationConstant {
  /// sup of d(x,z) / (d(x,y) + d(y,z)) over ordered triples with a positive
  /// denominator; 0 when there are none.
  double value = 0.0;
  /// First triple (lexicographic) attaining the value.
  std::array<std::size_t, 3> witness{};
  bool has_witness = false;
};

/// Smallest S for which the relaxed triangle inequality holds on every
/// ordered triple, degenerate ones included, with its witness.
inline RelaxationConstant minimal_relaxation(const DistanceMatrix& d) {
  RelaxationConstant best;
  const std::size_t n = d.size();
  for (std::size_t x = 0; x < n; ++x) {
    const auto row_x = d.row(x);
    for (std::size_t y = 0; y < n; ++y) {
      const double dxy = row_x[y];
      const auto row_y = d.row(y);
      for (std::size_t z = 0; z < n; ++z) {
        const double denom = dxy + row_y[z];
        if (!(denom > 0.0)) continue;
        const double ratio = row_x[z] / denom;
        if (!best.has_witness || ratio > best.value) {
          best.value = ratio;
          best.witness = {x, y, z};
          best.has_witness = true;
        }
      }
    }
  }
  return best;
}

inline double minimal_relaxation_constant(const DistanceMatrix& d) {
  return minimal_relaxation(d).value;
}

/// Point axioms plus d(x,z) <= S (d(x,y) + d(y,z)) + tol.abs on every
/// ordered triple.
inline AxiomReport verify_b_metric(const DistanceMatrix& d, double s,
                                   const Tolerances& tol = {}) {
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw InvalidParameter("relaxation constant S must be positive and finite");
  }
  AxiomReport report = check_point_axioms(d, tol);
  detail::ViolationSink sink(report, tol.max_witnesses);
  const std::size_t n = d.size();
  for (std::size_t x = 0; x < n; ++x) {
    const auto row_x = d.row(x);
    for (std::size_t y = 0; y < n; ++y) {
      const double dxy = row_x[y];
      const auto row_y = d.row(y);
      for (std::size_t z = 0; z < n; ++z) {
        const double lhs = row_x[z];
        const double rhs = s * (dxy + row_y[z]);
        if (lhs > rhs + tol.abs) sink.add({Axiom::relaxed_triangle, {x, y, z}, {}, lhs, rhs, rhs - lhs});
      }
    }
  }
  report.checked += n * n * n;
  return report;
}

/// Point axioms plus d(x,z) <= theta(d(x,y), d(y,z)) + tol.abs on every
/// ordered triple. theta's declared range must cover the largest entry.
inline AxiomReport verify_theta_metric(const DistanceMatrix& d, const BAction& theta,
                                       const Tolerances& tol = {}) {
  if (d.max_entry() > theta.range()) {
    throw EvaluationError("theta-triangle",
                          "largest distance " + std::to_string(d.max_entry()) +
                              " exceeds the declared range " + std::to_string(theta.range()) +
                              " of theta '" + theta.name() + "'");
  }
  AxiomReport report = check_point_axioms(d, tol);
  detail::ViolationSink sink(report, tol.max_witnesses);
  const std::size_t n = d.size();
  for (std::size_t x = 0; x < n; ++x) {
    const auto row_x = d.row(x);
    for (std::size_t y = 0; y < n; ++y) {
      const double dxy = row_x[y];
      const auto row_y = d.row(y);
      for (std::size_t z = 0; z < n; ++z) {
        const double lhs = row_x[z];
        double rhs = 0.0;
        try {
          rhs = theta(dxy, row_y[z]);
        } catch (const EvaluationError& e) {
          throw EvaluationError("theta-triangle", e.what());
        }
        if (lhs > rhs + tol.abs) sink.add({Axiom::theta_triangle, {x, y, z}, {}, lhs, rhs, rhs - lhs});
      }
    }
  }
  report.checked += n * n * n;
  return report;
}

}  // namespace metric_forge
