// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "metric_forge/metric_forge.hpp"
#include "oracles.hpp"

namespace mf = metric_forge;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void require(bool condition, const std::string& what) {
    if (!condition && passed) detail << "FAILED: " << what << "; ";
    passed = passed && condition;
  }
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// 1. phi(eps) = eps / (2S) is sound on generated b-metrics.
Outcome modulus_soundness() {
  Outcome o;
  const auto start = Clock::now();
  const double qs[] = {1.5, 2.0, 3.0};
  std::size_t instances = 0, triples = 0, violations = 0;
  for (int k = 0; k < 120; ++k) {
    const double q = qs[k % 3];
    const std::size_t n = 5 + static_cast<std::size_t>(k % 46);  // 5..50
    const auto d = mf::gen_random_b_metric(n, 1000 + k, q);
    const double s = std::pow(2.0, q - 1.0);
    o.require(mf::verify_b_metric(d, s).passed(), "claimed S verified");
    const auto grid = mf::default_epsilon_grid(d, 16);
    const auto r = mf::verify_uniform_regularity(d, mf::b_metric_modulus(s, grid), grid);
    triples += r.checked;
    violations += r.total_violations;
    ++instances;
  }
  const double elapsed = seconds_since(start);
  o.require(instances >= 100, ">= 100 instances");
  o.require(violations == 0, "zero violations");
  o.require(triples >= 100000, ">= 1e5 checked triples");
  o.require(elapsed < 10.0, "runtime < 10 s");
  o.detail << instances << " instances, " << triples << " hypothesis triples, " << violations
           << " violations, " << elapsed << " s";
  return o;
}

// 2. delta -> phi = delta / sqrt(2) -> uniform regularity, per theta family.
Outcome theta_modulus_soundness() {
  Outcome o;
  struct Case {
    const char* theta;
    double q;
  };
  std::size_t triples = 0, violations = 0, theta_breaches = 0;
  double worst_additive_gap = 0.0;
  for (const Case c : {Case{"additive", 1.0}, Case{"additive-product", 1.0}, Case{"squared-sum", 2.0}}) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const auto d = mf::gen_random_b_metric(25, 500 + seed, c.q);
      const auto grid = mf::default_epsilon_grid(d, 16);
      const auto theta = mf::gen_baction(c.theta, {{"M", std::max(1.0, 2.0 * d.max_entry())}});
      o.require(mf::verify_theta_metric(d, theta).passed(), std::string(c.theta) + " sample compatible");
      const auto modulus = mf::theta_modulus(theta, grid);
      const auto r = mf::verify_uniform_regularity(d, modulus, grid);
      triples += r.checked;
      violations += r.total_violations;
      // theta itself stays below eps on every hypothesis pair
      for (std::size_t k = 0; k < grid.size(); ++k) {
        const double phi = modulus.certificates[k].delta / std::numbers::sqrt2;
        for (std::size_t x = 0; x < d.size(); ++x)
          for (std::size_t y = 0; y < d.size(); ++y)
            for (std::size_t z = 0; z < d.size(); ++z)
              if (d(x, y) < phi && d(y, z) < phi && !(theta(d(x, y), d(y, z)) < grid[k])) ++theta_breaches;
        if (std::string(c.theta) == "additive") {
          const double closed = mf::modulus_b_metric(1.0, grid[k]);
          worst_additive_gap = std::max(worst_additive_gap, std::abs(modulus.table[k].phi - closed) / closed);
        }
      }
    }
  }
  o.require(violations == 0, "zero regularity violations");
  o.require(theta_breaches == 0, "theta < eps on every hypothesis pair");
  o.require(worst_additive_gap <= 0.05, "additive phi within 5% of eps/2");
  o.detail << triples << " hypothesis triples, " << violations << " violations, additive max rel gap "
           << worst_additive_gap;
  return o;
}

// 3. continuity certificates against closed forms and a dense-grid oracle.
Outcome continuity_certificates() {
  Outcome o;
  const auto add = mf::gen_baction("additive", {{"M", 100}});
  for (double eps : {0.1, 1.0, 10.0}) {
    const double delta = mf::origin_continuity_delta(add, eps).delta;
    const double expected = eps / std::numbers::sqrt2;
    o.require(std::abs(delta - expected) <= 0.05 * expected, "additive delta within 5%");
    o.detail << "additive eps=" << eps << " delta=" << delta << "; ";
  }
  const auto prod = mf::gen_baction("additive-product", {{"M", 100}});
  const double delta = mf::origin_continuity_delta(prod, 1.0).delta;
  const double dense = oracle::dense_delta([](double s, double t) { return s + t + s * t; }, 1.0, 1.0, 600);
  o.require(std::abs(delta - 0.58579) <= 0.05 * 0.58579, "additive-product delta within 5% of 0.58579");
  o.require(std::abs(dense - 0.58579) <= 0.05 * 0.58579, "dense-grid oracle agrees with 0.58579");
  o.detail << "additive-product delta=" << delta << " dense oracle=" << dense;
  return o;
}

// 4. Floyd-Warshall vs enumeration of simple paths; idempotence; monotonicity.
Outcome chain_metric_oracle() {
  Outcome o;
  std::mt19937_64 rng(4242);
  double worst = 0.0;
  int instances = 0;
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = 1 + static_cast<std::size_t>(k % 8);
    const double q = 1.0 + (k % 3);
    const auto d = mf::gen_random_b_metric(n, rng(), q);
    const auto star = mf::chain_metric(d);
    const auto ref = oracle::all_simple_paths_min(oracle::to_table(d));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) worst = std::max(worst, std::abs(star(i, j) - ref[i][j]));
    ++instances;
  }
  o.require(worst <= 1e-12, "entrywise within 1e-12");

  std::uniform_real_distribution<double> u(0.0, 1.0);
  int idempotent = 0, monotone = 0;
  for (int k = 0; k < 1000; ++k) {
    const std::size_t n = 2 + rng() % 12;
    const auto low = oracle::random_symmetric(n, rng);
    auto high = low;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) high[i][j] = high[j][i] = low[i][j] * (1.0 + u(rng));
    const auto a = mf::chain_metric(mf::DistanceMatrix::from_rows(low));
    const auto b = mf::chain_metric(mf::DistanceMatrix::from_rows(high));
    const auto aa = mf::chain_metric(a);
    bool same = true, ordered = true;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        same = same && std::abs(aa(i, j) - a(i, j)) <= 1e-12;
        ordered = ordered && a(i, j) <= b(i, j);
      }
    }
    idempotent += same;
    monotone += ordered;
  }
  o.require(idempotent == 1000, "idempotent on all pairs");
  o.require(monotone == 1000, "monotone on all pairs");
  o.detail << instances << " oracle instances (max diff " << worst << "), idempotent " << idempotent
           << "/1000, monotone " << monotone << "/1000";
  return o;
}

// 5. metrization certificates.
Outcome metrization_certificate() {
  Outcome o;
  std::mt19937_64 rng(55);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int k = 0; k < 20; ++k) {
    std::vector<double> xs;
    for (std::size_t i = 0; i < 3 + static_cast<std::size_t>(k); ++i) xs.push_back(u(rng));
    const auto line = mf::gen_power_line(xs, 2.0);
    const auto r = mf::metrize_b(line.matrix, 2.0);
    o.require(std::abs(r.p - 0.5) <= 1e-12, "line sample p = 0.5");
    o.require(std::abs(r.distortion.max - 1.0) <= 1e-9, "line sample distortion.max = 1");
    o.require(oracle::is_metric(oracle::to_table(r.metric), mf::Tolerances{}.abs), "line metric triangle");
  }
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const std::size_t n = 5 + 5 * static_cast<std::size_t>(k % 20);  // up to 100
    const auto d = mf::gen_random_b_metric(n, 900 + k, 2.0);
    const auto r = mf::metrize_b(d, 2.0);
    worst = std::max(worst, r.distortion.max);
    o.require(mf::equivalence_check(d, r).passed(), "equivalence_check passes");
    o.require(r.distortion.max <= 4.0, "distortion.max <= 4");
    o.require(oracle::is_metric(oracle::to_table(r.metric), mf::Tolerances{}.abs), "exhaustive triangle");
  }
  o.detail << "20 line samples at p=0.5/distortion 1; 20 random q=2 samples, worst distortion " << worst;
  return o;
}

// 6. negative examples are detected quickly with replayable witnesses.
Outcome negative_examples() {
  Outcome o;
  {
    const auto start = Clock::now();
    const auto theta = mf::gen_baction("max");
    const auto r = mf::check_baction_axioms(theta, 64);
    o.require(r.failed(mf::Axiom::baction_ii), "max fails axiom (ii)");
    bool replay = !r.violations.empty();
    for (const auto& v : r.violations) {
      if (v.axiom != mf::Axiom::baction_ii) continue;
      replay = replay && theta(v.coords[0], v.coords[1]) == v.lhs && theta(v.coords[2], v.coords[3]) == v.rhs &&
               v.lhs >= v.rhs;
    }
    o.require(replay, "max witnesses replay");
    o.require(seconds_since(start) < 1.0, "max detected < 1 s");
  }
  {
    const auto start = Clock::now();
    const auto theta = mf::gen_baction("shifted");
    const auto r = mf::check_baction_axioms(theta, 64);
    o.require(r.failed(mf::Axiom::baction_i), "shifted fails axiom (i)");
    o.require(theta(0.0, 0.0) == 1.0, "shifted witness replays");
    o.require(seconds_since(start) < 1.0, "shifted detected < 1 s");
  }
  {
    const auto start = Clock::now();
    const auto d = mf::gen_power_line({0, 1, 2}, 2.0).matrix;
    const auto r = mf::verify_b_metric(d, 1.9);
    bool found = false;
    for (const auto& v : r.violations) {
      if (v.points == std::vector<std::size_t>{0, 1, 2}) {
        found = v.lhs == 4.0 && std::abs(v.rhs - 3.8) <= 1e-12 && d(0, 2) == v.lhs &&
                std::abs(1.9 * (d(0, 1) + d(1, 2)) - v.rhs) <= 1e-12;
      }
    }
    o.require(found, "witness (0,1,2) with values (4, 3.8)");
    o.require(seconds_since(start) < 1.0, "b-metric violation detected < 1 s");
  }
  o.detail << "max -> axiom-ii, shifted -> axiom-i, (x-y)^2 at S=1.9 -> (4, 3.8)";
  return o;
}

// 7. minimal relaxation constant vs brute force.
Outcome minimal_constant() {
  Outcome o;
  std::mt19937_64 rng(7007);
  int instances = 0;
  for (int k = 0; k < 400; ++k) {
    const std::size_t n = 1 + static_cast<std::size_t>(k % 20);
    const double q = 1.0 + 3.0 * std::uniform_real_distribution<double>(0, 1)(rng);
    const auto d = k % 2 ? mf::gen_random_b_metric(n, rng(), q)
                         : mf::DistanceMatrix::from_rows(oracle::random_symmetric(n, rng));
    const double got = mf::minimal_relaxation_constant(d);
    o.require(got == oracle::relaxation_constant(oracle::to_table(d)), "exact match with brute force");
    if (n >= 2) o.require(got >= 1.0, ">= 1 for n >= 2");
    ++instances;
  }
  o.detail << instances << " instances, n = 1..20, exact agreement";
  return o;
}

// 8. CLI timings at n = 500.
Outcome performance() {
  Outcome o;
  const auto dir = std::filesystem::temp_directory_path() / "metric_forge_acceptance";
  std::filesystem::create_directories(dir);
  const std::string cli = METRIC_FORGE_CLI;
  const std::string csv = (dir / "n500.csv").string();
  const std::string quiet = " > /dev/null 2>&1";
  o.require(std::system((cli + " gen --kind random --n 500 --seed 1 --q 2 --out " + csv + quiet).c_str()) == 0,
            "gen n=500");
  auto timed = [&](const std::string& args) {
    const auto start = Clock::now();
    const int rc = std::system((cli + " " + args + quiet).c_str());
    return std::pair{rc, seconds_since(start)};
  };
  const auto [metrize_rc, metrize_s] =
      timed("metrize " + csv + " --mode b --S 2 --metric-out " + (dir / "metric.csv").string());
  const auto [validate_rc, validate_s] = timed("validate " + csv + " --mode b --S 2");
  o.require(metrize_rc == 0, "metrize exit 0");
  o.require(metrize_s < 5.0, "metrize n=500 < 5 s");
  o.require(validate_rc == 0, "validate exit 0");
  o.require(validate_s < 2.0, "validate n=500 < 2 s");
  o.detail << "metrize " << metrize_s << " s, validate " << validate_s << " s";
  std::filesystem::remove_all(dir);
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"AC1 modulus soundness (b-metric)", modulus_soundness},
      {"AC2 theta-modulus soundness", theta_modulus_soundness},
      {"AC3 continuity certificates", continuity_certificates},
      {"AC4 chain-metric oracle equivalence", chain_metric_oracle},
      {"AC5 metrization certificate", metrization_certificate},
      {"AC6 negative-example detection", negative_examples},
      {"AC7 minimal constant correctness", minimal_constant},
      {"AC8 performance", performance},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.passed = false;
      out.detail << "exception: " << e.what();
    }
    failures += out.passed ? 0 : 1;
    std::cout << (out.passed ? "[PASS] " : "[FAIL] ") << c.name << " -- " << out.detail.str() << std::endl;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
