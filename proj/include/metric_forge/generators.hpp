#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "metric_forge/axiom_report.hpp"
#include "metric_forge/b_action.hpp"
#include "metric_forge/distance_matrix.hpp"
#include "metric_forge/error.hpp"

namespace metric_forge {

struct PowerLineSample {
  DistanceMatrix matrix;
  /// 2^(q-1): (a + b)^q <= 2^(q-1) (a^q + b^q) by convexity.
  double s_claim = 1.0;
};

namespace detail {

inline std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void require_power(double q) {
  if (!(q >= 1.0) || !std::isfinite(q)) throw InvalidParameter("exponent q must be finite and >= 1");
}

}  // namespace detail

/// d(x,y) = |x - y|^q on distinct points of the real line.
inline PowerLineSample gen_power_line(const std::vector<double>& points, double q) {
  detail::require_power(q);
  auto sorted = points;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidParameter("points must be distinct");
  }
  std::vector<std::string> labels;
  for (double x : points) {
    if (!std::isfinite(x)) throw InvalidParameter("points must be finite");
    labels.push_back(detail::format_number(x));
  }
  auto m = DistanceMatrix::generate(PointSet(std::move(labels)), [&](std::size_t i, std::size_t j) {
    return std::pow(std::abs(points[i] - points[j]), q);
  });
  return {std::move(m), std::pow(2.0, q - 1.0)};
}

inline constexpr std::string_view kRandomSource = "std::mt19937_64 + std::uniform_real_distribution<double>(0,1)";

/// n uniform points in the unit square, Euclidean distances raised to q.
/// Reproducible from the seed on a given standard library.
inline DistanceMatrix gen_random_b_metric(std::size_t n, std::uint64_t seed, double q) {
  if (n < 1) throw InvalidParameter("n must be at least 1");
  detail::require_power(q);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::pair<double, double>> pts;
  pts.reserve(n);
  while (pts.size() < n) {
    const std::pair<double, double> p{unit(rng), unit(rng)};
    if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
  }
  return DistanceMatrix::generate(PointSet::indexed(n), [&](std::size_t i, std::size_t j) {
    return std::pow(std::hypot(pts[i].first - pts[j].first, pts[i].second - pts[j].second), q);
  });
}

/// Registry entry for a built-in theta family.
struct BActionFamily {
  std::string_view name;
  std::string_view formula;
  /// Axioms the family is known to violate; empty for genuine B-actions.
  std::vector<Axiom> failing;
  /// The axiom the family exists to demonstrate (negative examples only).
  std::string_view advertised;

  bool positive() const noexcept { return failing.empty(); }
};

inline const std::vector<BActionFamily>& baction_registry() {
  static const std::vector<BActionFamily> registry{
      {"additive", "s + t", {}, ""},
      {"additive-product", "s + t + s*t", {}, ""},
      {"squared-sum", "(sqrt(s) + sqrt(t))^2", {}, ""},
      {"max", "max(s, t)", {Axiom::baction_ii}, "axiom-ii"},
      // theta(s,0) = s + 1 > s and theta(0,t) = t + 1 > m for m = 1, so the
      // shift necessarily breaks (iii) and (iv) as well.
      {"shifted", "s + t + 1", {Axiom::baction_i, Axiom::baction_iii, Axiom::baction_iv}, "axiom-i"},
  };
  return registry;
}

inline const BActionFamily& baction_family(std::string_view name) {
  for (const auto& f : baction_registry()) {
    if (f.name == name) return f;
  }
  throw InvalidParameter("unknown B-action family '" + std::string(name) + "'");
}

/// Recognised parameters: "M" (declared range, default 1) and "budget".
inline BAction gen_baction(std::string_view name, const std::map<std::string, double>& params = {}) {
  const auto& family = baction_family(name);
  double range = 1.0;
  std::uint64_t budget = kDefaultEvaluationBudget;
  for (const auto& [key, value] : params) {
    if (key == "M") {
      range = value;
    } else if (key == "budget") {
      if (!(value >= 1.0) || value != std::floor(value)) {
        throw InvalidParameter("budget must be a positive integer");
      }
      budget = static_cast<std::uint64_t>(value);
    } else {
      throw InvalidParameter("unknown B-action parameter '" + key + "'");
    }
  }
  BAction::Function f;
  if (family.name == "additive") {
    f = [](double s, double t) { return s + t; };
  } else if (family.name == "additive-product") {
    f = [](double s, double t) { return s + t + s * t; };
  } else if (family.name == "squared-sum") {
    f = [](double s, double t) {
      const double r = std::sqrt(s) + std::sqrt(t);
      return r * r;
    };
  } else if (family.name == "max") {
    f = [](double s, double t) { return std::max(s, t); };
  } else {
    f = [](double s, double t) { return s + t + 1.0; };
  }
  return BAction(std::string(family.name), std::move(f), range, budget);
}

}  // namespace metric_forge
