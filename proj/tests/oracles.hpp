#pragma once

// Brute-force reference computations used only by the tests. None of them
// reuse the library's loops: they work on nested vectors and enumerate
// explicitly.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "metric_forge/distance_matrix.hpp"

namespace oracle {

using Table = std::vector<std::vector<double>>;

inline Table to_table(const metric_forge::DistanceMatrix& d) {
  Table t(d.size(), std::vector<double>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = 0; j < d.size(); ++j) t[i][j] = d(i, j);
  return t;
}

/// sup d(x,z) / (d(x,y) + d(y,z)) over all n^3 ordered triples.
inline double relaxation_constant(const Table& d) {
  double best = 0.0;
  const std::size_t n = d.size();
  for (std::size_t t = 0; t < n * n * n; ++t) {
    const std::size_t x = t / (n * n), y = (t / n) % n, z = t % n;
    const double den = d[x][y] + d[y][z];
    if (den > 0.0) best = std::max(best, d[x][z] / den);
  }
  return best;
}

/// Minimum path length over every ordering of every subset of intermediate
/// vertices (next_permutation over subsets).
inline Table all_simple_paths_min(const Table& c) {
  const std::size_t n = c.size();
  Table best(n, std::vector<double>(n, std::numeric_limits<double>::infinity()));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) {
        best[i][j] = 0.0;
        continue;
      }
      std::vector<std::size_t> others;
      for (std::size_t k = 0; k < n; ++k)
        if (k != i && k != j) others.push_back(k);
      const std::size_t m = others.size();
      for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
        std::vector<std::size_t> mid;
        for (std::size_t b = 0; b < m; ++b)
          if (mask & (std::size_t{1} << b)) mid.push_back(others[b]);
        do {
          double len = 0.0;
          std::size_t u = i;
          for (std::size_t v : mid) {
            len += c[u][v];
            u = v;
          }
          len += c[u][j];
          best[i][j] = std::min(best[i][j], len);
        } while (std::next_permutation(mid.begin(), mid.end()));
      }
    }
  }
  return best;
}

/// Direct triangle-inequality scan.
inline bool is_metric(const Table& d, double tol) {
  const std::size_t n = d.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (d[x][z] > d[x][y] + d[y][z] + tol) return false;
  return true;
}

/// Sup of f over a dense Cartesian lattice clipped to the quarter-disk.
inline double dense_quarter_disk_sup(const std::function<double(double, double)>& f,
                                     double delta, int lattice) {
  double sup = 0.0;
  for (int i = 0; i <= lattice; ++i) {
    for (int j = 0; j <= lattice; ++j) {
      const double s = delta * i / lattice, t = delta * j / lattice;
      if (s * s + t * t <= delta * delta) sup = std::max(sup, f(s, t));
    }
  }
  return sup;
}

/// Largest delta with dense-lattice sup < eps, by plain bisection on [0, hi].
inline double dense_delta(const std::function<double(double, double)>& f, double eps, double hi,
                          int lattice) {
  double lo = 0.0;
  for (int it = 0; it < 50; ++it) {
    const double mid = 0.5 * (lo + hi);
    (dense_quarter_disk_sup(f, mid, lattice) < eps ? lo : hi) = mid;
  }
  return lo;
}

/// Random symmetric positive table (not necessarily a metric).
inline Table random_symmetric(std::size_t n, std::mt19937_64& rng, double lo = 0.1, double hi = 10.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Table t(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) t[i][j] = t[j][i] = u(rng);
  return t;
}

}  // namespace oracle
