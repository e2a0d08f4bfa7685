#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "metric_forge/distance_matrix.hpp"
#include "metric_forge/error.hpp"

namespace metric_forge {

inline constexpr std::size_t kMaxOraclePoints = 10;

/// Minimum chain sum over every simple path, by depth-first enumeration.
/// Independent of chain_metric; used to cross-check it on small samples.
inline DistanceMatrix exhaustive_chain_metric(const DistanceMatrix& c) {
  const std::size_t n = c.size();
  if (n > kMaxOraclePoints) {
    throw InvalidParameter("exhaustive path enumeration is limited to " +
                           std::to_string(kMaxOraclePoints) + " points");
  }
  std::vector<double> best(n * n, std::numeric_limits<double>::infinity());
  std::vector<char> on_path(n, 0);

  auto dfs = [&](auto&& self, std::size_t source, std::size_t u, double length) -> void {
    double& slot = best[source * n + u];
    if (length < slot) slot = length;
    for (std::size_t v = 0; v < n; ++v) {
      if (on_path[v]) continue;
      on_path[v] = 1;
      self(self, source, v, length + c(u, v));
      on_path[v] = 0;
    }
  };
  for (std::size_t s = 0; s < n; ++s) {
    on_path[s] = 1;
    dfs(dfs, s, s, 0.0);
    on_path[s] = 0;
  }
  return DistanceMatrix(c.points(), std::move(best));
}

}  // namespace metric_forge
