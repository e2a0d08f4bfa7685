// Walks one sample through the library: squared distances on a line are a
// b-metric with S = 2, the modulus eps/(2S) certifies uniform
// regularity, and the snowflake + chain construction recovers |x - y|.

#include <iostream>

#include "metric_forge/metric_forge.hpp"

int main() {
  namespace mf = metric_forge;
  const auto sample = mf::gen_power_line({0.0, 1.0, 2.0, 4.0}, 2.0);
  const auto& d = sample.matrix;

  std::cout << "minimal relaxation constant: " << mf::minimal_relaxation_constant(d) << "\n";
  std::cout << "b-metric with S=2: " << (mf::verify_b_metric(d, 2.0).passed() ? "yes" : "no") << "\n";

  const auto grid = mf::default_epsilon_grid(d);
  const auto cert = mf::chittenden_gate(d, mf::b_metric_modulus(2.0, grid), grid);
  std::cout << "regularity conditions (sample-scale): " << (cert.passed() ? "pass" : "fail") << "\n";

  const auto result = mf::metrize_b(d, 2.0);
  std::cout << "snowflake exponent p=" << result.p << ", distortion max=" << result.distortion.max << "\n";
  mf::write_distance_csv(std::cout, result.metric);
  return mf::equivalence_check(d, result).passed() ? 0 : 1;
}
