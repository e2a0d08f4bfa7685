#pragma once

#include <cstddef>
#include <cstdint>

namespace metric_forge {

/// Numerical knobs shared by the checkers. Defaults are the documented ones;
/// the CLI exposes each as a flag.
struct Tolerances {
  /// Absolute slack before an inequality counts as violated.
  double abs = 1e-9;
  /// Relative slack for supremum comparisons and certificate stability.
  double rel = 1e-6;
  /// Root tolerance scale: |theta(s,t) - m| <= root * max(1, m).
  double root = 1e-10;
  /// Largest acceptable d^p / metric ratio in metrization.
  double distortion_cap = 4.0;
  /// Number of exponent halvings metrization may try.
  int retry_cap = 6;
  /// Witnesses kept per report; the total count is always exact.
  std::size_t max_witnesses = 256;
};

inline constexpr std::size_t kDefaultMaxPoints = 2000;

/// Default evaluation budget for a single B-action check. Covers
/// grid_n^2 + grid_n^4 at the default grid of 64.
inline constexpr std::uint64_t kDefaultEvaluationBudget = std::uint64_t{1} << 25;

}  // namespace metric_forge
