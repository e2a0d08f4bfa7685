#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "metric_forge/axiom_report.hpp"
#include "metric_forge/b_action.hpp"
#include "metric_forge/core_distances.hpp"
#include "metric_forge/distance_matrix.hpp"
#include "metric_forge/error.hpp"
#include "metric_forge/options.hpp"

namespace metric_forge {

/// Entrywise d^p for p in (0, 1].
inline DistanceMatrix snowflake(const DistanceMatrix& d, double p) {
  if (!(p > 0.0 && p <= 1.0)) throw InvalidParameter("snowflake exponent must lie in (0, 1]");
  if (p == 1.0) return d;
  std::vector<double> out(d.data().begin(), d.data().end());
  for (double& v : out) v = std::pow(v, p);
  return DistanceMatrix(d.points(), std::move(out));
}

/// Infimum of chain sums over all finite chains, i.e. all-pairs shortest
/// paths on the complete graph weighted by `c`. Floyd-Warshall, fixed loop
/// order, so the output is bit-reproducible. The result is the largest metric
/// pointwise below `c` when `c` is symmetric.
inline DistanceMatrix chain_metric(const DistanceMatrix& c) {
  const std::size_t n = c.size();
  std::vector<double> d(c.data().begin(), c.data().end());
  for (std::size_t k = 0; k < n; ++k) {
    const double* row_k = d.data() + k * n;
    for (std::size_t i = 0; i < n; ++i) {
      double* row_i = d.data() + i * n;
      const double dik = row_i[k];
      for (std::size_t j = 0; j < n; ++j) {
        const double via = dik + row_k[j];
        if (via < row_i[j]) row_i[j] = via;
      }
    }
  }
  return DistanceMatrix(c.points(), std::move(d));
}

struct Chain {
  std::size_t from = 0;
  std::size_t to = 0;
  std::vector<std::size_t> path;  // from ... to
  double length = 0.0;
};

/// Lexicographically smallest shortest chain for every pair i < j: from the
/// current vertex, step to the smallest vertex that still lies on a shortest
/// chain to the target.
inline std::vector<Chain> witness_chains(const DistanceMatrix& c, const DistanceMatrix& shortest) {
  const std::size_t n = c.size();
  std::vector<Chain> chains;
  chains.reserve(n * (n > 0 ? n - 1 : 0) / 2);
  std::vector<char> visited(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      Chain ch{i, j, {i}, 0.0};
      const double tol = 1e-12 * std::max(1.0, shortest(i, j));
      std::fill(visited.begin(), visited.end(), 0);
      visited[i] = 1;
      std::size_t u = i;
      while (u != j) {
        std::size_t next = j;
        for (std::size_t k = 0; k < n; ++k) {
          if (visited[k] || k == u) continue;
          if (c(u, k) + shortest(k, j) <= shortest(u, j) + tol) {
            next = k;
            break;
          }
        }
        ch.length += c(u, next);
        ch.path.push_back(next);
        visited[next] = 1;
        u = next;
      }
      chains.push_back(std::move(ch));
    }
  }
  return chains;
}

struct Distortion {
  double max = 1.0;
  double min = 1.0;
};

struct MetrizationResult {
  DistanceMatrix metric;
  double p = 1.0;
  Distortion distortion;
  /// Relaxation constant the exponent was derived from.
  double s = 1.0;
  /// Exponents tried, including the returned one.
  int attempts = 0;
  std::vector<Chain> chains;
};

/// Distortion cap still unmet after all retries; carries the attempt with the
/// smallest distortion.max.
class MetrizationFailure : public Error {
 public:
  MetrizationFailure(MetrizationResult best, const std::string& what)
      : Error(what), best_(std::move(best)) {}

  const MetrizationResult& best_attempt() const noexcept { return best_; }

 private:
  MetrizationResult best_;
};

struct MetrizeOptions {
  bool chains = false;
};

/// max and min over i != j of snow(i,j) / metric(i,j); {1, 1} for n <= 1.
inline Distortion distortion_of(const DistanceMatrix& snow, const DistanceMatrix& metric) {
  const std::size_t n = snow.size();
  if (n <= 1) return {};
  Distortion out{0.0, 0.0};
  bool first = true;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double r = snow(i, j) / metric(i, j);
      if (first || r > out.max) out.max = r;
      if (first || r < out.min) out.min = r;
      first = false;
    }
  }
  return out;
}

/// Snowflake exponent for a relaxation constant: (2S)^p = 2, or 1 if S <= 1.
inline double snowflake_exponent(double s) {
  return s <= 1.0 ? 1.0 : std::log(2.0) / std::log(2.0 * s);
}

/// metric = chain_metric(d^p) with p from snowflake_exponent(S). While the
/// distortion exceeds tol.distortion_cap, p is halved, at most tol.retry_cap
/// times.
inline MetrizationResult metrize_b(const DistanceMatrix& d, double s, const Tolerances& tol = {},
                                   const MetrizeOptions& opts = {}) {
  const AxiomReport pre = verify_b_metric(d, s, tol);
  if (!pre.passed()) {
    throw InvalidParameter("sample is not a b-metric with S=" + std::to_string(s) + " (" +
                           std::to_string(pre.total_violations) + " violations)");
  }
  double p = snowflake_exponent(s);
  MetrizationResult best;
  bool have_best = false;
  for (int attempt = 0; attempt <= tol.retry_cap; ++attempt, p *= 0.5) {
    const DistanceMatrix snow = snowflake(d, p);
    MetrizationResult r;
    r.metric = chain_metric(snow);
    r.p = p;
    r.s = s;
    r.attempts = attempt + 1;
    r.distortion = distortion_of(snow, r.metric);
    if (r.distortion.max <= tol.distortion_cap) {
      if (opts.chains) r.chains = witness_chains(snow, r.metric);
      return r;
    }
    if (!have_best || r.distortion.max < best.distortion.max) {
      best = std::move(r);
      have_best = true;
    }
  }
  best.attempts = tol.retry_cap + 1;
  const double worst = best.distortion.max;
  throw MetrizationFailure(std::move(best),
                           "distortion " + std::to_string(worst) + " exceeds cap " +
                               std::to_string(tol.distortion_cap) + " after " +
                               std::to_string(tol.retry_cap + 1) + " exponents");
}

/// max of theta(a,b) / (a + b) over realized leg pairs a = d(x,y),
/// b = d(y,z) with x != y, y != z (x = z allowed, so a = b occurs);
/// 0 when n <= 1.
inline double effective_relaxation(const DistanceMatrix& d, const BAction& theta) {
  const std::size_t n = d.size();
  double best = 0.0;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y) continue;
      const double a = d(x, y);
      for (std::size_t z = 0; z < n; ++z) {
        if (z == y) continue;
        const double b = d(y, z);
        if (a + b > 0.0) best = std::max(best, theta(a, b) / (a + b));
      }
    }
  }
  return best;
}

/// Delegates to metrize_b with S = max(effective_relaxation, minimal
/// relaxation constant).
inline MetrizationResult metrize_theta(const DistanceMatrix& d, const BAction& theta,
                                       const Tolerances& tol = {},
                                       const MetrizeOptions& opts = {}) {
  const AxiomReport pre = verify_theta_metric(d, theta, tol);
  if (!pre.passed()) {
    throw InvalidParameter("sample is not a theta-metric for '" + theta.name() + "' (" +
                           std::to_string(pre.total_violations) + " violations)");
  }
  const double s = std::max(effective_relaxation(d, theta), minimal_relaxation_constant(d));
  // n <= 1 has no pairs at all; any positive S gives p = 1.
  return metrize_b(d, s > 0.0 ? s : 1.0, tol, opts);
}

/// Finite-sample equivalence between d and the constructed metric: exact
/// triangle inequality, metric <= d^p, matching zero sets, and
/// d^p / distortion.max <= metric.
inline AxiomReport equivalence_check(const DistanceMatrix& d, const MetrizationResult& r,
                                     const Tolerances& tol = {}) {
  const std::size_t n = d.size();
  if (r.metric.size() != n) throw MalformedInput("metric and sample sizes differ");
  AxiomReport report;
  report.scope = "sample-scale";
  detail::ViolationSink sink(report, tol.max_witnesses);
  const DistanceMatrix snow = snowflake(d, r.p);
  const DistanceMatrix& m = r.metric;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const double mxy = m(x, y);
      for (std::size_t z = 0; z < n; ++z) {
        const double lhs = m(x, z);
        const double rhs = mxy + m(y, z);
        if (lhs > rhs + tol.abs) sink.add({Axiom::triangle, {x, y, z}, {}, lhs, rhs, rhs - lhs});
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double mv = m(i, j);
      const double sv = snow(i, j);
      if (mv > sv + tol.abs) sink.add({Axiom::upper_bound, {i, j}, {}, mv, sv, sv - mv});
      if ((mv == 0.0) != (d(i, j) == 0.0)) {
        sink.add({Axiom::zero_set, {i, j}, {}, mv, d(i, j), -std::abs(mv - d(i, j))});
      }
      const double floor = sv / r.distortion.max;
      if (floor > mv + tol.abs) sink.add({Axiom::lower_bound, {i, j}, {}, floor, mv, mv - floor});
    }
  }
  report.checked = n * n * n + n * n;
  return report;
}

}  // namespace metric_forge
