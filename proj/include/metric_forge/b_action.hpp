#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "metric_forge/axiom_report.hpp"
#include "metric_forge/error.hpp"
#include "metric_forge/options.hpp"

namespace metric_forge {

/// A candidate B-action: a black-box binary function on [0, M]^2.
///
/// Calls are checked: arguments must lie in the declared range and the
/// result must be finite and nonnegative, otherwise EvaluationError.
class BAction {
 public:
  using Function = std::function<double(double, double)>;

  BAction(std::string name, Function f, double range,
          std::uint64_t budget = kDefaultEvaluationBudget)
      : name_(std::move(name)), f_(std::move(f)), range_(range), budget_(budget) {
    if (!f_) throw InvalidParameter("B-action '" + name_ + "' has no function");
    if (!(range_ > 0.0) || !std::isfinite(range_)) {
      throw InvalidParameter("B-action range must be positive and finite");
    }
    if (budget_ == 0) throw InvalidParameter("B-action budget must be positive");
  }

  double operator()(double s, double t) const {
    const double slack = range_ * 1e-12;
    if (!(s >= 0.0 && t >= 0.0 && s <= range_ + slack && t <= range_ + slack)) {
      throw EvaluationError(
          "", "theta '" + name_ + "' queried at (" + std::to_string(s) + ", " +
                  std::to_string(t) + ") outside [0, " + std::to_string(range_) + "]^2");
    }
    const double v = f_(s, t);
    if (!std::isfinite(v) || v < 0.0) {
      throw EvaluationError("", "theta '" + name_ + "' returned " + std::to_string(v) +
                                    " at (" + std::to_string(s) + ", " +
                                    std::to_string(t) + ")");
    }
    return v;
  }

  const std::string& name() const noexcept { return name_; }
  double range() const noexcept { return range_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::string name_;
  Function f_;
  double range_;
  std::uint64_t budget_;
};

/// Evidence that theta stays below eps on the closed quarter-disk of radius
/// delta, as observed on a finite polar + Cartesian sample.
struct ContinuityCertificate {
  double epsilon = 0.0;
  double delta = 0.0;
  double sup_observed = 0.0;
  int grid_resolution = 0;
  /// True when two consecutive refinements agreed within tol.rel.
  bool stable = false;
  std::uint64_t evaluations = 0;
};

struct ContinuityOptions {
  int initial_resolution = 33;
  int max_resolution = 513;
};

namespace detail {

/// Budget-counting wrapper; errors carry the name of the current phase.
class CountingEvaluator {
 public:
  explicit CountingEvaluator(const BAction& theta, std::string context = {})
      : theta_(theta), context_(std::move(context)) {}

  void set_context(std::string context) { context_ = std::move(context); }

  double operator()(double s, double t) {
    if (++used_ > theta_.budget()) {
      throw EvaluationError(context_, "evaluation budget of " +
                                          std::to_string(theta_.budget()) +
                                          " exhausted for theta '" + theta_.name() + "'");
    }
    try {
      return theta_(s, t);
    } catch (const EvaluationError& e) {
      throw EvaluationError(context_, e.what());
    }
  }

  std::uint64_t used() const noexcept { return used_; }

 private:
  const BAction& theta_;
  std::string context_;
  std::uint64_t used_ = 0;
};

struct BisectionResult {
  double root = 0.0;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Bisection for a nondecreasing f with f(lo) <= 0 <= f(hi); stops as soon as
/// |f(mid)| <= tol.
template <typename F>
BisectionResult bisect_increasing(F&& f, double lo, double hi, double tol,
                                  int max_iterations = 60) {
  BisectionResult r;
  for (r.iterations = 1; r.iterations <= max_iterations; ++r.iterations) {
    const double mid = lo + 0.5 * (hi - lo);
    const double fm = f(mid);
    r.root = mid;
    r.residual = fm;
    if (std::abs(fm) <= tol) {
      r.converged = true;
      return r;
    }
    (fm < 0.0 ? lo : hi) = mid;
  }
  r.iterations = max_iterations;
  return r;
}

struct AxiomIiiOutcome {
  bool solved = false;
  double s = 0.0;
  double theta_at_zero = 0.0;  // theta(0, t)
  double theta_at_m = 0.0;     // theta(m, t)
  double residual = 0.0;
  int iterations = 0;
};

template <typename Eval>
AxiomIiiOutcome solve_axiom_iii_impl(Eval& eval, double m, double t, double tol) {
  AxiomIiiOutcome out;
  out.theta_at_zero = eval(0.0, t);
  const double f0 = out.theta_at_zero - m;
  if (std::abs(f0) <= tol) {
    out.solved = true;
    out.s = 0.0;
    out.residual = f0;
    return out;
  }
  out.theta_at_m = eval(m, t);
  const double fm = out.theta_at_m - m;
  if (std::abs(fm) <= tol) {
    out.solved = true;
    out.s = m;
    out.residual = fm;
    return out;
  }
  if (f0 > 0.0 || fm < 0.0) {
    out.residual = f0 > 0.0 ? f0 : fm;
    return out;
  }
  const auto r = bisect_increasing([&](double s) { return eval(s, t) - m; }, 0.0, m, tol);
  out.solved = r.converged;
  out.s = r.root;
  out.residual = r.residual;
  out.iterations = r.iterations;
  return out;
}

inline double root_tolerance(double m, const Tolerances& tol) {
  return tol.root * std::max(1.0, m);
}

/// Largest theta value observed on {s,t >= 0, s^2 + t^2 <= delta^2}: the arc
/// at `resolution` angles plus a resolution x resolution Cartesian lattice.
template <typename Eval>
double quarter_disk_sup(Eval& eval, double delta, int resolution) {
  double sup = 0.0;
  const int last = resolution - 1;
  for (int k = 0; k <= last; ++k) {
    const double angle = (std::numbers::pi / 2.0) * k / last;
    const double s = std::clamp(delta * std::cos(angle), 0.0, delta);
    const double t = std::clamp(delta * std::sin(angle), 0.0, delta);
    sup = std::max(sup, eval(s, t));
  }
  const double r2 = delta * delta;
  for (int i = 0; i <= last; ++i) {
    const double s = delta * i / last;
    for (int j = 0; j <= last; ++j) {
      const double t = delta * j / last;
      if (s * s + t * t <= r2) sup = std::max(sup, eval(s, t));
    }
  }
  return sup;
}

}  // namespace detail

/// Finds s in [0, m] with theta(s, t) = m by bisection. theta(., t) is
/// increasing by axiom (ii), so a sign change on [0, m] brackets the unique
/// root. Throws AxiomIiiViolation when no root is bracketed or the bisection
/// cannot reach tolerance (a jump in theta).
inline double solve_axiom_iii(const BAction& theta, double m, double t,
                              const Tolerances& tol = {}) {
  if (!(m >= 0.0) || !std::isfinite(m)) {
    throw InvalidParameter("m must be a finite nonnegative value");
  }
  if (!(t >= 0.0 && t <= m)) throw InvalidParameter("t must lie in [0, m]");
  detail::CountingEvaluator eval(theta, "axiom (iii)");
  const auto out = detail::solve_axiom_iii_impl(eval, m, t, detail::root_tolerance(m, tol));
  if (!out.solved) {
    throw AxiomIiiViolation(m, t,
                            "no s in [0, " + std::to_string(m) + "] solves theta(s, " +
                                std::to_string(t) + ") = m; residual " +
                                std::to_string(out.residual));
  }
  return out.s;
}

/// Uniform grid {k M / (grid_n - 1)} used by the axiom checks.
inline std::vector<double> axiom_grid(double range, int grid_n) {
  std::vector<double> g(static_cast<std::size_t>(grid_n));
  for (int k = 0; k < grid_n; ++k) g[k] = range * k / (grid_n - 1);
  g.back() = range;
  return g;
}

/// Checks the four B-action axioms on a grid_n x grid_n grid over [0, M]^2.
///
/// A pass is falsification-only: continuity and the axioms between grid
/// points are not observed. Axiom (ii) is checked along axis-aligned chains
/// of neighbouring grid points, which composes to all comparable grid pairs.
/// Axiom (iii) samples up to grid_n values m from the observed image that lie
/// in [0, M], and grid_n values t in [0, m] for each.
inline AxiomReport check_baction_axioms(const BAction& theta, int grid_n = 64,
                                        const Tolerances& tol = {}) {
  if (grid_n < 2) throw InvalidParameter("grid_n must be at least 2");
  AxiomReport report;
  report.scope = "falsification-only: grid_n=" + std::to_string(grid_n) + " over [0, " +
                 std::to_string(theta.range()) + "]^2";
  detail::ViolationSink sink(report, tol.max_witnesses);
  detail::CountingEvaluator eval(theta, "axiom (i)");

  const auto g = axiom_grid(theta.range(), grid_n);
  const auto n = static_cast<std::size_t>(grid_n);
  std::vector<double> table(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) table[i * n + j] = eval(g[i], g[j]);
  }
  auto at = [&](std::size_t i, std::size_t j) { return table[i * n + j]; };

  // (i)
  if (std::abs(at(0, 0)) > tol.abs) {
    sink.add({Axiom::baction_i, {}, {0.0, 0.0}, at(0, 0), 0.0, -std::abs(at(0, 0))});
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double gap = std::abs(at(i, j) - at(j, i));
      if (gap > tol.abs) sink.add({Axiom::baction_i, {}, {g[i], g[j]}, at(i, j), at(j, i), -gap});
    }
  }

  // (ii): equality counts as a violation.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j + 1 < n; ++j) {
      if (at(i, j) >= at(i, j + 1)) {
        sink.add({Axiom::baction_ii, {}, {g[i], g[j], g[i], g[j + 1]}, at(i, j), at(i, j + 1),
                  at(i, j + 1) - at(i, j)});
      }
      if (at(j, i) >= at(j + 1, i)) {
        sink.add({Axiom::baction_ii, {}, {g[j], g[i], g[j + 1], g[i]}, at(j, i), at(j + 1, i),
                  at(j + 1, i) - at(j, i)});
      }
    }
  }

  // (iii)
  eval.set_context("axiom (iii)");
  std::vector<double> image;
  for (double v : table) {
    if (v <= theta.range()) image.push_back(v);
  }
  std::sort(image.begin(), image.end());
  image.erase(std::unique(image.begin(), image.end()), image.end());
  std::vector<double> m_samples;
  if (image.size() <= n) {
    m_samples = image;
  } else {
    for (std::size_t k = 0; k < n; ++k) m_samples.push_back(image[k * (image.size() - 1) / (n - 1)]);
  }
  for (double m : m_samples) {
    const double rtol = detail::root_tolerance(m, tol);
    for (std::size_t k = 0; k < n; ++k) {
      const double t = k + 1 == n ? m : m * static_cast<double>(k) / static_cast<double>(n - 1);
      const auto out = detail::solve_axiom_iii_impl(eval, m, t, rtol);
      if (!out.solved) {
        // lhs..rhs is the observed range of theta(., t) on [0, m]; m must lie in it.
        const double slack = -std::abs(out.residual);
        sink.add({Axiom::baction_iii, {}, {m, t}, out.theta_at_zero, out.theta_at_m, slack});
      }
    }
  }

  // (iv)
  eval.set_context("axiom (iv)");
  for (std::size_t k = 1; k < n; ++k) {
    const double v = at(k, 0);
    if (v > g[k] + tol.abs) sink.add({Axiom::baction_iv, {}, {g[k], 0.0}, v, g[k], g[k] - v});
  }
  return report;
}

namespace detail {

template <typename Eval>
double largest_passing_delta(Eval& eval, double epsilon, double start, double floor,
                             int resolution, double bisect_rel, double& sup_out) {
  auto passes = [&](double delta, double& sup) {
    sup = quarter_disk_sup(eval, delta, resolution);
    return sup < epsilon;
  };
  double sup = 0.0;
  double delta = start;
  if (passes(delta, sup)) {
    sup_out = sup;
    return delta;
  }
  double failing = delta;
  for (;;) {
    failing = delta;
    delta *= 0.5;
    if (delta < floor) {
      throw ContinuityFailure(epsilon, failing, sup,
                              "no delta above " + std::to_string(floor) +
                                  " keeps theta below eps=" + std::to_string(epsilon) +
                                  " near the origin (last sup " + std::to_string(sup) + ")");
    }
    if (passes(delta, sup)) break;
  }
  double lo = delta;
  double lo_sup = sup;
  double hi = failing;
  for (int it = 0; it < 200 && hi - lo > bisect_rel * lo; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (passes(mid, sup)) {
      lo = mid;
      lo_sup = sup;
    } else {
      hi = mid;
    }
  }
  sup_out = lo_sup;
  return lo;
}

}  // namespace detail

/// Largest delta (on a halving schedule from min(M, eps), refined by
/// bisection) such that the sampled sup of theta over the quarter-disk of
/// radius delta stays below eps. The sample is refined until two consecutive
/// refinements agree within tol.rel or max_resolution is reached.
inline ContinuityCertificate origin_continuity_delta(const BAction& theta, double epsilon,
                                                     const Tolerances& tol = {},
                                                     const ContinuityOptions& opts = {}) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InvalidParameter("epsilon must be positive and finite");
  }
  if (opts.initial_resolution < 2 || opts.max_resolution < opts.initial_resolution) {
    throw InvalidParameter("invalid continuity resolution schedule");
  }
  detail::CountingEvaluator eval(theta, "continuity at origin");
  const double start = std::min(theta.range(), epsilon);
  const double floor = 1e-12 * theta.range();
  const double bisect_rel = tol.rel * 1e-3;

  ContinuityCertificate cert;
  cert.epsilon = epsilon;
  int resolution = opts.initial_resolution;
  double sup = 0.0;
  double delta = detail::largest_passing_delta(eval, epsilon, start, floor, resolution,
                                               bisect_rel, sup);
  int agreements = 0;
  while (agreements < 2) {
    const int next = 2 * (resolution - 1) + 1;
    if (next > opts.max_resolution) break;
    double next_sup = 0.0;
    const double next_delta = detail::largest_passing_delta(eval, epsilon, start, floor, next,
                                                            bisect_rel, next_sup);
    agreements = std::abs(next_delta - delta) <= tol.rel * delta ? agreements + 1 : 0;
    delta = next_delta;
    sup = next_sup;
    resolution = next;
  }
  cert.delta = delta;
  cert.sup_observed = sup;
  cert.grid_resolution = resolution;
  cert.stable = agreements >= 2;
  cert.evaluations = eval.used();
  return cert;
}

}  // namespace metric_forge
