#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "metric_forge/axiom_report.hpp"
#include "metric_forge/b_action.hpp"
#include "metric_forge/core_distances.hpp"
#include "metric_forge/distance_matrix.hpp"
#include "metric_forge/error.hpp"
#include "metric_forge/options.hpp"

namespace metric_forge {

/// phi(eps) = eps / (2S): legs below it sum to less than eps / S, so the
/// relaxed triangle inequality keeps the third side below eps.
inline double modulus_b_metric(double s, double epsilon) {
  if (!(s > 0.0) || !std::isfinite(s)) throw InvalidParameter("S must be positive and finite");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InvalidParameter("epsilon must be positive and finite");
  }
  return epsilon / (2.0 * s);
}

/// phi(eps) = delta / sqrt(2), where delta certifies theta < eps on the
/// quarter-disk of radius delta. Both legs below phi put the pair of legs
/// inside that disk.
inline double modulus_theta(const ContinuityCertificate& cert) {
  return cert.delta / std::numbers::sqrt2;
}

inline double modulus_theta(const BAction& theta, double epsilon, const Tolerances& tol = {},
                            const ContinuityOptions& opts = {}) {
  return modulus_theta(origin_continuity_delta(theta, epsilon, tol, opts));
}

enum class ModulusKind { b_metric_closed_form, theta_numeric };

constexpr std::string_view to_string(ModulusKind k) noexcept {
  return k == ModulusKind::b_metric_closed_form ? "b-metric-closed-form" : "theta-numeric";
}

struct ModulusEntry {
  double epsilon = 0.0;
  double phi = 0.0;
};

/// Tabulated eps -> phi(eps), sorted by eps, phi positive and nondecreasing.
struct RegularityModulus {
  ModulusKind kind = ModulusKind::b_metric_closed_form;
  std::vector<ModulusEntry> table;
  /// Relaxation constant (b-metric kind).
  double s = 0.0;
  /// Name of theta and one certificate per table row (theta kind).
  std::string theta_name;
  std::vector<ContinuityCertificate> certificates;

  /// Throws InvalidParameter when eps is not tabulated.
  double phi(double epsilon) const {
    for (const auto& e : table) {
      if (e.epsilon == epsilon ||
          std::abs(e.epsilon - epsilon) <= 1e-12 * std::max(1.0, std::abs(epsilon))) {
        return e.phi;
      }
    }
    throw InvalidParameter("modulus is not defined at eps=" + std::to_string(epsilon));
  }

  std::vector<double> epsilons() const {
    std::vector<double> out;
    for (const auto& e : table) out.push_back(e.epsilon);
    return out;
  }
};

namespace detail {

inline std::vector<double> sorted_epsilons(std::span<const double> grid) {
  std::vector<double> eps(grid.begin(), grid.end());
  for (double e : eps) {
    if (!(e > 0.0) || !std::isfinite(e)) {
      throw InvalidParameter("every epsilon must be positive and finite");
    }
  }
  std::sort(eps.begin(), eps.end());
  eps.erase(std::unique(eps.begin(), eps.end()), eps.end());
  if (eps.empty()) throw InvalidParameter("epsilon grid is empty");
  return eps;
}

}  // namespace detail

inline RegularityModulus b_metric_modulus(double s, std::span<const double> epsilon_grid) {
  RegularityModulus m;
  m.kind = ModulusKind::b_metric_closed_form;
  m.s = s;
  for (double e : detail::sorted_epsilons(epsilon_grid)) {
    m.table.push_back({e, modulus_b_metric(s, e)});
  }
  return m;
}

/// One continuity certificate per eps. The table holds the suffix minimum of
/// delta / sqrt(2), which keeps phi nondecreasing when bisection noise makes
/// neighbouring certificates cross; shrinking phi never breaks soundness.
inline RegularityModulus theta_modulus(const BAction& theta, std::span<const double> epsilon_grid,
                                       const Tolerances& tol = {},
                                       const ContinuityOptions& opts = {}) {
  RegularityModulus m;
  m.kind = ModulusKind::theta_numeric;
  m.theta_name = theta.name();
  for (double e : detail::sorted_epsilons(epsilon_grid)) {
    m.certificates.push_back(origin_continuity_delta(theta, e, tol, opts));
    m.table.push_back({e, modulus_theta(m.certificates.back())});
  }
  for (std::size_t k = m.table.size(); k-- > 1;) {
    m.table[k - 1].phi = std::min(m.table[k - 1].phi, m.table[k].phi);
  }
  return m;
}

/// `count` log-spaced values over [min positive entry / 2, 2 * max entry].
inline std::vector<double> default_epsilon_grid(const DistanceMatrix& d, int count = 16) {
  if (count < 1) throw InvalidParameter("epsilon grid needs at least one value");
  double lo = d.min_positive_entry() / 2.0;
  double hi = 2.0 * d.max_entry();
  if (!(lo > 0.0)) {
    lo = 0.5;
    hi = 2.0;
  }
  std::vector<double> grid(static_cast<std::size_t>(count));
  if (count == 1) {
    grid[0] = hi;
    return grid;
  }
  const double step = std::log(hi / lo) / (count - 1);
  for (int k = 0; k < count; ++k) grid[k] = lo * std::exp(step * k);
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

/// For every eps in the grid, every ordered triple with d(x,y) < phi(eps) and
/// d(y,z) < phi(eps) must have d(x,z) < eps. `checked` counts the triples
/// that met both hypotheses. x = z triples can never fail since d(x,x) = 0.
inline AxiomReport verify_uniform_regularity(const DistanceMatrix& d,
                                             const RegularityModulus& modulus,
                                             std::span<const double> epsilon_grid,
                                             const Tolerances& tol = {}) {
  AxiomReport report;
  report.scope = "sample-scale: no counterexample on this sample and epsilon grid";
  detail::ViolationSink sink(report, tol.max_witnesses);
  const std::size_t n = d.size();
  std::vector<std::size_t> incoming;
  std::vector<std::size_t> outgoing;
  for (double eps : epsilon_grid) {
    const double phi = modulus.phi(eps);
    for (std::size_t y = 0; y < n; ++y) {
      incoming.clear();
      outgoing.clear();
      for (std::size_t k = 0; k < n; ++k) {
        if (d(k, y) < phi) incoming.push_back(k);
        if (d(y, k) < phi) outgoing.push_back(k);
      }
      report.checked += incoming.size() * outgoing.size();
      for (std::size_t x : incoming) {
        for (std::size_t z : outgoing) {
          const double third = d(x, z);
          if (third >= eps) {
            Violation v{Axiom::uniform_regularity, {x, y, z}, {d(x, y), d(y, z), phi},
                        third, eps, eps - third};
            v.epsilon = eps;
            sink.add(std::move(v));
          }
        }
      }
    }
  }
  return report;
}

/// Sample-scale certificate for the three distance-level conditions:
/// (i) identity of indiscernibles, (ii) symmetry, (iii) uniform regularity.
struct ChittendenCertificate {
  AxiomReport identity;
  AxiomReport symmetry;
  AxiomReport regularity;
  std::vector<double> epsilon_grid;
  RegularityModulus modulus;
  std::string scope = "sample-scale";

  bool passed() const noexcept {
    return identity.passed() && symmetry.passed() && regularity.passed();
  }
};

inline ChittendenCertificate chittenden_gate(const DistanceMatrix& d,
                                             const RegularityModulus& modulus,
                                             std::span<const double> epsilon_grid,
                                             const Tolerances& tol = {}) {
  ChittendenCertificate cert;
  cert.identity = check_identity(d, tol);
  cert.symmetry = check_symmetry(d, tol);
  cert.regularity = verify_uniform_regularity(d, modulus, epsilon_grid, tol);
  cert.epsilon_grid.assign(epsilon_grid.begin(), epsilon_grid.end());
  cert.modulus = modulus;
  return cert;
}

}  // namespace metric_forge
