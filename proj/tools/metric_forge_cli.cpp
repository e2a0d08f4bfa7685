// metric-forge: batch checks for b-metric and theta-metric samples.
//
// Exit codes: 0 pass, 1 mathematical failure (with witnesses), 2 malformed
// input or parameters.

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "metric_forge/metric_forge.hpp"
#include "metric_forge/report_json.hpp"

namespace mf = metric_forge;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFailure = 1;
constexpr int kExitMalformed = 2;

struct Options {
  std::string matrix_path;
  std::string mode = "b";
  std::optional<double> s;
  std::string theta;
  std::vector<std::string> params;
  std::vector<double> eps;
  int grid_n = 64;
  std::string out;
  std::string metric_out;
  std::string matrix_for_gate;
  bool chains = false;
  mf::Tolerances tol;
  // gen
  std::string kind = "random";
  std::vector<double> points;
  double q = 2.0;
  std::size_t n = 50;
  std::uint64_t seed = 0;
};

std::size_t max_points_from_env() {
  const char* raw = std::getenv("METRIC_FORGE_MAX_N");
  if (raw == nullptr || *raw == '\0') return mf::kDefaultMaxPoints;
  std::size_t v = 0;
  const std::string_view text(raw);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || v == 0) {
    throw mf::InvalidParameter("METRIC_FORGE_MAX_N must be a positive integer");
  }
  return v;
}

std::map<std::string, double> parse_params(const std::vector<std::string>& raw) {
  std::map<std::string, double> out;
  for (const auto& kv : raw) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw mf::InvalidParameter("--param expects k=v, got '" + kv + "'");
    }
    const std::string value = kv.substr(eq + 1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
      throw mf::InvalidParameter("--param value '" + value + "' is not a number");
    }
    out[kv.substr(0, eq)] = v;
  }
  return out;
}

/// Builds the named theta; M defaults to max(1, `range_hint`).
mf::BAction make_theta(const Options& o, double range_hint) {
  if (o.theta.empty()) throw mf::InvalidParameter("--theta is required in theta mode");
  auto params = parse_params(o.params);
  if (!params.contains("M")) params["M"] = std::max(1.0, range_hint);
  return mf::gen_baction(o.theta, params);
}

void require_mode(const Options& o) {
  if (o.mode != "b" && o.mode != "theta") {
    throw mf::InvalidParameter("--mode must be 'b' or 'theta'");
  }
}

double require_s(const Options& o) {
  if (!o.s) throw mf::InvalidParameter("--S is required in b mode");
  if (!(*o.s > 0.0)) throw mf::InvalidParameter("--S must be positive");
  return *o.s;
}

void emit(const Options& o, const json& doc) {
  const std::string text = doc.dump(2) + "\n";
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw mf::InvalidParameter("cannot write '" + o.out + "'");
  f << text;
}

json header(std::string_view command) {
  return json{{"schema", mf::kReportSchema}, {"command", command}};
}

int cmd_validate(const Options& o) {
  require_mode(o);
  const auto d = mf::read_distance_csv_file(o.matrix_path, o.tol, max_points_from_env());
  json doc = header("validate");
  doc["mode"] = o.mode;
  doc["n"] = d.size();
  mf::AxiomReport report;
  if (o.mode == "b") {
    const double s = require_s(o);
    report = mf::verify_b_metric(d, s, o.tol);
    doc["S"] = s;
    const auto smin = mf::minimal_relaxation(d);
    doc["minimal_relaxation_constant"] = {{"value", smin.value}};
    if (smin.has_witness) doc["minimal_relaxation_constant"]["witness"] = smin.witness;
  } else {
    const auto theta = make_theta(o, d.max_entry());
    report = mf::verify_theta_metric(d, theta, o.tol);
    doc["theta"] = {{"name", theta.name()}, {"M", theta.range()}};
  }
  doc["report"] = report;
  doc["passed"] = report.passed();
  emit(o, doc);
  return report.passed() ? kExitPass : kExitFailure;
}

int cmd_modulus(const Options& o) {
  require_mode(o);
  std::optional<mf::DistanceMatrix> sample;
  if (!o.matrix_for_gate.empty()) {
    sample = mf::read_distance_csv_file(o.matrix_for_gate, o.tol, max_points_from_env());
  }
  std::vector<double> eps = o.eps;
  if (eps.empty()) {
    if (!sample) throw mf::InvalidParameter("--eps is required without --matrix");
    eps = mf::default_epsilon_grid(*sample);
  }
  for (double e : eps) {
    if (!(e > 0.0)) throw mf::InvalidParameter("--eps values must be positive");
  }
  json doc = header("modulus");
  doc["mode"] = o.mode;
  mf::RegularityModulus modulus;
  if (o.mode == "b") {
    modulus = mf::b_metric_modulus(require_s(o), eps);
  } else {
    const double largest = *std::max_element(eps.begin(), eps.end());
    const auto theta = make_theta(o, std::max(largest, sample ? sample->max_entry() : 0.0));
    modulus = mf::theta_modulus(theta, eps, o.tol);
  }
  doc["modulus"] = modulus;
  int code = kExitPass;
  if (sample) {
    const auto cert = mf::chittenden_gate(*sample, modulus, eps, o.tol);
    doc["certificate"] = cert;
    code = cert.passed() ? kExitPass : kExitFailure;
  }
  emit(o, doc);
  return code;
}

int cmd_metrize(const Options& o) {
  require_mode(o);
  const auto d = mf::read_distance_csv_file(o.matrix_path, o.tol, max_points_from_env());
  json doc = header("metrize");
  doc["mode"] = o.mode;
  doc["n"] = d.size();

  std::optional<mf::BAction> theta;
  mf::AxiomReport pre;
  double s = 0.0;
  if (o.mode == "b") {
    s = o.s ? require_s(o) : std::max(1.0, mf::minimal_relaxation_constant(d));
    doc["S"] = s;
    pre = mf::verify_b_metric(d, s, o.tol);
  } else {
    theta.emplace(make_theta(o, d.max_entry()));
    doc["theta"] = {{"name", theta->name()}, {"M", theta->range()}};
    pre = mf::verify_theta_metric(d, *theta, o.tol);
  }
  if (!pre.passed()) {
    doc["validation"] = pre;
    doc["passed"] = false;
    emit(o, doc);
    return kExitFailure;
  }

  const mf::MetrizeOptions mopts{.chains = o.chains};
  mf::MetrizationResult result;
  try {
    result = theta ? mf::metrize_theta(d, *theta, o.tol, mopts) : mf::metrize_b(d, s, o.tol, mopts);
  } catch (const mf::MetrizationFailure& e) {
    doc["error"] = {{"type", "metrization-failure"}, {"message", e.what()}};
    doc["best_attempt"] = mf::metrization_json(e.best_attempt(), "");
    doc["passed"] = false;
    emit(o, doc);
    return kExitFailure;
  }

  const std::string metric_path = o.metric_out.empty() ? o.matrix_path + ".metric.csv" : o.metric_out;
  mf::write_distance_csv_file(metric_path, result.metric);
  doc["result"] = mf::metrization_json(result, metric_path);

  const auto equivalence = mf::equivalence_check(d, result, o.tol);
  doc["equivalence"] = equivalence;
  bool passed = equivalence.passed();

  if (d.size() <= 8) {
    const auto oracle = mf::exhaustive_chain_metric(mf::snowflake(d, result.p));
    double worst = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i)
      for (std::size_t j = 0; j < d.size(); ++j)
        worst = std::max(worst, std::abs(oracle(i, j) - result.metric(i, j)));
    const bool matches = worst <= 1e-12;
    doc["oracle"] = {{"ran", true}, {"max_abs_difference", worst}, {"matches", matches}};
    passed = passed && matches;
  } else {
    doc["oracle"] = {{"ran", false}};
  }
  doc["passed"] = passed;
  emit(o, doc);
  return passed ? kExitPass : kExitFailure;
}

int cmd_baction_check(const Options& o) {
  auto params = parse_params(o.params);
  const auto theta = mf::gen_baction(o.theta, params);
  const auto& family = mf::baction_family(o.theta);
  const auto report = mf::check_baction_axioms(theta, o.grid_n, o.tol);
  json doc = header("baction-check");
  std::vector<std::string> expected;
  for (auto a : family.failing) expected.emplace_back(mf::to_string(a));
  doc["theta"] = {{"name", theta.name()},
                  {"formula", family.formula},
                  {"M", theta.range()},
                  {"expected_failures", expected}};
  doc["grid_n"] = o.grid_n;
  doc["report"] = report;
  doc["passed"] = report.passed();
  emit(o, doc);
  return report.passed() ? kExitPass : kExitFailure;
}

int cmd_gen(const Options& o) {
  if (o.out.empty()) throw mf::InvalidParameter("gen requires --out <csv path>");
  json doc = header("gen");
  doc["q"] = o.q;
  doc["csv_path"] = o.out;
  mf::DistanceMatrix d;
  if (o.kind == "line") {
    if (o.points.empty()) throw mf::InvalidParameter("--points is required for kind 'line'");
    auto sample = mf::gen_power_line(o.points, o.q);
    d = std::move(sample.matrix);
    doc["kind"] = "line";
    doc["points"] = o.points;
    doc["S_claim"] = sample.s_claim;
  } else if (o.kind == "random") {
    if (o.n > max_points_from_env()) throw mf::InvalidParameter("--n exceeds METRIC_FORGE_MAX_N");
    d = mf::gen_random_b_metric(o.n, o.seed, o.q);
    doc["kind"] = "random";
    doc["n"] = o.n;
    doc["seed"] = o.seed;
    doc["generator"] = mf::kRandomSource;
    doc["S_claim"] = std::pow(2.0, o.q - 1.0);
  } else {
    throw mf::InvalidParameter("--kind must be 'line' or 'random'");
  }
  mf::write_distance_csv_file(o.out, d);
  std::cout << doc.dump(2) << "\n";
  return kExitPass;
}

void add_tolerance_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--tol-abs", o.tol.abs, "absolute slack on inequalities")->check(CLI::NonNegativeNumber);
  cmd->add_option("--tol-rel", o.tol.rel, "relative tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--tol-root", o.tol.root, "root tolerance scale")->check(CLI::PositiveNumber);
  cmd->add_option("--distortion-cap", o.tol.distortion_cap, "largest accepted distortion");
  cmd->add_option("--retry-cap", o.tol.retry_cap, "exponent halvings allowed")->check(CLI::NonNegativeNumber);
  cmd->add_option("--max-witnesses", o.tol.max_witnesses, "witnesses kept per report")
      ->check(CLI::PositiveNumber);
}

void add_theta_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--theta", o.theta, "B-action family")
      ->check(CLI::IsMember({"additive", "additive-product", "squared-sum", "max", "shifted"}));
  cmd->add_option("--param", o.params, "family parameter k=v (M, budget)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"metric-forge: axiom checks, regularity moduli and metrization for generalized metric samples"};
  app.require_subcommand(1);
  Options o;

  auto* validate = app.add_subcommand("validate", "check a distance CSV against b- or theta-metric axioms");
  validate->add_option("matrix", o.matrix_path, "distance CSV")->required();
  validate->add_option("--mode", o.mode, "b or theta");
  validate->add_option("--S", o.s, "relaxation constant");
  add_theta_flags(validate, o);
  validate->add_option("--out", o.out, "write the JSON report here");
  add_tolerance_flags(validate, o);

  auto* modulus = app.add_subcommand("modulus", "tabulate the uniform-regularity modulus phi(eps)");
  modulus->add_option("--mode", o.mode, "b or theta");
  modulus->add_option("--S", o.s, "relaxation constant (b mode)");
  add_theta_flags(modulus, o);
  modulus->add_option("--eps", o.eps, "epsilon value (repeatable)");
  modulus->add_option("--matrix", o.matrix_for_gate, "also certify this sample's regularity conditions");
  modulus->add_option("--out", o.out, "write the JSON report here");
  add_tolerance_flags(modulus, o);

  auto* metrize = app.add_subcommand("metrize", "construct an equivalent metric");
  metrize->add_option("matrix", o.matrix_path, "distance CSV")->required();
  metrize->add_option("--mode", o.mode, "b or theta");
  metrize->add_option("--S", o.s, "relaxation constant (default: minimal constant of the sample)");
  add_theta_flags(metrize, o);
  metrize->add_flag("--chains", o.chains, "include witness chains");
  metrize->add_option("--metric-out", o.metric_out, "metric CSV path (default <matrix>.metric.csv)");
  metrize->add_option("--out", o.out, "write the JSON report here");
  add_tolerance_flags(metrize, o);

  auto* baction = app.add_subcommand("baction-check", "check the four B-action axioms on a grid");
  add_theta_flags(baction, o);
  baction->get_option("--theta")->required();
  baction->add_option("--grid-n", o.grid_n, "grid points per axis")->check(CLI::Range(2, 4096));
  baction->add_option("--out", o.out, "write the JSON report here");
  add_tolerance_flags(baction, o);

  auto* gen = app.add_subcommand("gen", "generate a sample CSV with JSON provenance on stdout");
  gen->add_option("--kind", o.kind, "line or random");
  gen->add_option("--points", o.points, "line coordinates")->delimiter(',');
  gen->add_option("--q", o.q, "distance exponent (>= 1)");
  gen->add_option("--n", o.n, "number of random points");
  gen->add_option("--seed", o.seed, "random seed");
  gen->add_option("--out", o.out, "CSV output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitMalformed;
  }

  try {
    if (*validate) return cmd_validate(o);
    if (*modulus) return cmd_modulus(o);
    if (*metrize) return cmd_metrize(o);
    if (*baction) return cmd_baction_check(o);
    if (*gen) return cmd_gen(o);
  } catch (const mf::MalformedInput& e) {
    std::cerr << "malformed input: " << e.what() << "\n";
    return kExitMalformed;
  } catch (const mf::InvalidParameter& e) {
    std::cerr << "invalid parameter: " << e.what() << "\n";
    return kExitMalformed;
  } catch (const mf::Error& e) {
    // theta evaluation, axiom (iii) and continuity failures
    json doc = header(app.get_subcommands().front()->get_name());
    doc["error"] = {{"type", "mathematical-failure"}, {"message", e.what()}};
    if (const auto* cf = dynamic_cast<const mf::ContinuityFailure*>(&e)) {
      doc["error"]["epsilon"] = cf->epsilon();
      doc["error"]["smallest_delta"] = cf->smallest_delta();
      doc["error"]["sup_observed"] = cf->sup_observed();
    }
    doc["passed"] = false;
    std::cout << doc.dump(2) << "\n";
    std::cerr << e.what() << "\n";
    return kExitFailure;
  }
  return kExitMalformed;
}
