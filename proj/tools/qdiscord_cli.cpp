// qdiscord: command-line front end.
//
//   qdiscord point --theta <v> [--in-pi]
//   qdiscord sweep --theta-min <v> --theta-max <v> --steps <n> --out <path> [--in-pi]
//   qdiscord crossover
//   qdiscord verify [--seed <u64>] [--samples <n>]
//
// Exit status: 0 success, 1 usage error, 2 numerical or property failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qdiscord/qdiscord.hpp"
#include "qdiscord/verify.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;

/// Thrown for bad arguments detected after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double to_radians(double value, bool in_pi) { return in_pi ? value * std::numbers::pi : value; }

ordered_json point_json(const qdiscord::PointReport& p) {
  const auto& r = p.record;
  ordered_json j;
  j["theta"] = r.theta;
  j["theta_over_pi"] = r.theta / std::numbers::pi;
  j["I"] = r.mutual_info;
  j["Ic"] = r.classical_info;
  j["Ic_kw"] = p.classical_info_kw;
  j["discord"] = r.discord;
  j["I_clone"] = r.clone_info;
  j["diff"] = r.diff;
  return j;
}

int run_point(double theta, bool in_pi) {
  qdiscord::PointReport report;
  try {
    report = qdiscord::evaluate_point(to_radians(theta, in_pi));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::cout << point_json(report).dump(2) << '\n';
  return qdiscord::record_invariants_hold(report.record) ? 0 : kExitNumerical;
}

int run_sweep(double theta_min, double theta_max, int steps, const std::string& out_path,
              bool in_pi) {
  std::vector<double> grid;
  try {
    grid = qdiscord::sweep_grid(to_radians(theta_min, in_pi), to_radians(theta_max, in_pi), steps);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) throw UsageError("cannot open output file: " + out_path);

  const auto records = qdiscord::run_sweep(grid);
  qdiscord::write_sweep_csv(out, records);
  out.flush();
  if (!out) throw UsageError("failed writing output file: " + out_path);

  bool valid = true;
  for (const auto& r : records) valid = valid && qdiscord::record_invariants_hold(r);
  ordered_json j;
  j["out"] = out_path;
  j["rows"] = records.size();
  j["records_valid"] = valid;
  std::cout << j.dump(2) << '\n';
  return valid ? 0 : kExitNumerical;
}

int run_crossover() {
  const qdiscord::CrossoverOptions options;
  const auto c = qdiscord::find_crossover(options);
  ordered_json j;
  j["theta"] = c.theta;
  j["theta_over_pi"] = c.theta / std::numbers::pi;
  j["tolerance"] = options.tolerance;
  j["tolerance_over_pi"] = options.tolerance / std::numbers::pi;
  j["residual"] = c.residual;
  j["below"] = {{"theta", c.below}, {"diff", c.gap_below}};
  j["above"] = {{"theta", c.above}, {"diff", c.gap_above}};
  j["iterations"] = c.iterations;
  j["bracket_widened"] = c.widened;
  std::cout << j.dump(2) << '\n';
  return 0;
}

int run_verify(std::uint64_t seed, int samples, double tolerance_scale) {
  if (samples < 1) throw UsageError("--samples must be >= 1");
  const auto summary = qdiscord::run_verification({seed, samples, tolerance_scale});
  ordered_json j;
  j["seed"] = summary.seed;
  j["samples"] = summary.samples;
  j["suites"] = ordered_json::array();
  for (const auto& s : summary.suites)
    j["suites"].push_back({{"name", s.name}, {"checks", s.checks}, {"failures", s.failures}});
  j["failures"] = ordered_json::array();
  for (const auto& f : summary.failures) {
    j["failures"].push_back({{"suite", f.suite},
                             {"property", f.property},
                             {"seed", f.seed},
                             {"observed", f.observed},
                             {"limit", f.limit}});
  }
  j["total_failures"] = summary.total_failures;
  j["passed"] = summary.passed();
  std::cout << j.dump(2) << '\n';
  return summary.passed() ? 0 : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum discord, classical correlations and broadcast protocols"};
  app.require_subcommand(1);

  double theta = 0.0;
  bool in_pi = false;
  auto* point = app.add_subcommand("point", "Evaluate I, Ic, discord and cloning info at one angle");
  point->add_option("--theta", theta, "Mixing angle (radians, or multiples of pi with --in-pi)")
      ->required();
  point->add_flag("--in-pi", in_pi, "Interpret angles as multiples of pi");

  double theta_min = 0.0;
  double theta_max = 0.0;
  int steps = 0;
  std::string out_path;
  auto* sweep = app.add_subcommand("sweep", "Write a theta sweep as CSV");
  sweep->add_option("--theta-min", theta_min, "First angle")->required();
  sweep->add_option("--theta-max", theta_max, "Last angle")->required();
  sweep->add_option("--steps", steps, "Number of grid points (>= 2)")->required();
  sweep->add_option("--out", out_path, "Output CSV path")->required();
  sweep->add_flag("--in-pi", in_pi, "Interpret angles as multiples of pi");

  auto* crossover = app.add_subcommand("crossover", "Locate the LOCC/cloning crossover angle");

  std::uint64_t seed = qdiscord::VerifyOptions{}.seed;
  int samples = qdiscord::VerifyOptions{}.samples;
  double tolerance_scale = 1.0;
  auto* verify = app.add_subcommand("verify", "Run the seeded property suites");
  verify->add_option("--seed", seed, "Master seed");
  verify->add_option("--samples", samples, "Samples per suite (>= 1)");
  verify->add_option("--tolerance-scale", tolerance_scale,
                     "Multiplier on every property limit (harness use)")
      ->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*point) return run_point(theta, in_pi);
    if (*sweep) return run_sweep(theta_min, theta_max, steps, out_path, in_pi);
    if (*crossover) return run_crossover();
    if (*verify) return run_verify(seed, samples, tolerance_scale);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitUsage;
}
