#pragma once

#include <cstddef>
#include <string_view>
#include <string>
#include <vector>

namespace metric_forge {

enum class Axiom {
  identity,            // d(x,x) = 0
  positivity,          // d(x,y) > 0 for x != y
  symmetry,            // d(x,y) = d(y,x)
  relaxed_triangle,    // d(x,z) <= S (d(x,y) + d(y,z))
  theta_triangle,      // d(x,z) <= theta(d(x,y), d(y,z))
  uniform_regularity,  // legs below phi(eps) force the third side below eps
  baction_i,           // theta(0,0) = 0, theta symmetric
  baction_ii,          // strict monotonicity
  baction_iii,         // theta(., t) = m solvable on [0, m]
  baction_iv,          // theta(s, 0) <= s
  triangle,            // exact triangle inequality of a constructed metric
  upper_bound,         // metric <= d^p
  lower_bound,         // metric >= d^p / distortion
  zero_set,            // metric(i,j) = 0 iff d(i,j) = 0
};

constexpr std::string_view to_string(Axiom a) noexcept {
  switch (a) {
    case Axiom::identity: return "identity";
    case Axiom::positivity: return "positivity";
    case Axiom::symmetry: return "symmetry";
    case Axiom::relaxed_triangle: return "relaxed-triangle";
    case Axiom::theta_triangle: return "theta-triangle";
    case Axiom::uniform_regularity: return "uniform-regularity";
    case Axiom::baction_i: return "axiom-i";
    case Axiom::baction_ii: return "axiom-ii";
    case Axiom::baction_iii: return "axiom-iii";
    case Axiom::baction_iv: return "axiom-iv";
    case Axiom::triangle: return "triangle";
    case Axiom::upper_bound: return "upper-bound";
    case Axiom::lower_bound: return "lower-bound";
    case Axiom::zero_set: return "zero-set";
  }
  return "unknown";
}

/// One counterexample. `points` holds sample indices for distance axioms;
/// `coords` holds arguments of theta for B-action axioms. The inequality
/// being tested is always `lhs <= rhs` (strict `<` for axiom (ii) and for
/// uniform regularity), and `slack = rhs - lhs`.
struct Violation {
  Axiom axiom;
  std::vector<std::size_t> points;
  std::vector<double> coords;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  /// Scale at which the violation was found (uniform regularity only).
  double epsilon = 0.0;
};

struct AxiomReport {
  std::vector<Violation> violations;
  /// Exact count, even when `violations` was truncated.
  std::size_t total_violations = 0;
  /// Number of instances (pairs, triples, grid points) the inequality was
  /// actually tested on.
  std::size_t checked = 0;
  /// What a pass means: "exhaustive" over a finite sample, or
  /// "falsification-only" at a declared grid resolution.
  std::string scope = "exhaustive";

  bool passed() const noexcept { return violations.empty(); }

  std::size_t count(Axiom a) const noexcept {
    std::size_t c = 0;
    for (const auto& v : violations) c += v.axiom == a ? 1 : 0;
    return c;
  }

  bool failed(Axiom a) const noexcept { return count(a) > 0; }

  void merge(const AxiomReport& other, std::size_t cap) {
    for (const auto& v : other.violations) {
      if (violations.size() < cap) violations.push_back(v);
    }
    total_violations += other.total_violations;
    checked += other.checked;
  }
};

namespace detail {

/// Appends up to `cap` witnesses while counting all of them.
class ViolationSink {
 public:
  ViolationSink(AxiomReport& report, std::size_t cap)
      : report_(report), cap_(cap == 0 ? 1 : cap) {}

  void add(Violation v) {
    ++report_.total_violations;
    if (report_.violations.size() < cap_) report_.violations.push_back(std::move(v));
  }

 private:
  AxiomReport& report_;
  std::size_t cap_;
};

}  // namespace detail

}  // namespace metric_forge
