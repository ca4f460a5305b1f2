// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "qdiscord/qdiscord.hpp"
#include "qdiscord/testing/oracles.hpp"

namespace {

using namespace qdiscord;
using Clock = std::chrono::steady_clock;

constexpr double kPi = std::numbers::pi;
const SubsystemLayout kPair{2, 2};

// Pinned tolerances.
constexpr double kEndpointTol = 1e-6;
constexpr double kDualRouteTol = 1e-4;
constexpr double kIdentityTol = 1e-8;
constexpr double kPureGapTol = 1e-4;
constexpr double kBoundSlack = 1e-8;
constexpr double kTransferTol = 1e-9;
constexpr double kOptimumSlack = 1e-8;
constexpr double kSeparabilityTol = 1e-9;
constexpr double kFidelityTol = 1e-6;
constexpr double kOverlapTol = 1e-8;
constexpr double kMonotoneSlack = 1e-9;
constexpr double kCrossoverSeconds = 60.0;
constexpr double kDualRouteSeconds = 120.0;
constexpr std::uint64_t kSeed = 20130901;

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, auto... args) {
  char buffer[256];
  std::snprintf(buffer, sizeof buffer, format, args...);
  return buffer;
}

std::vector<double> unit_grid(int points) {
  return sweep_grid(0.0, kMaxExampleAngle, points);
}

DensityMatrix random_two_qubit(std::uint64_t seed) {
  return random_density_matrix(kPair, 1 + seed % 4, seed);
}

Outcome crossover() {
  const auto start = Clock::now();
  const CrossoverResult c = find_crossover();
  const double elapsed = seconds_since(start);
  const double ratio = c.theta / kPi;
  return {ratio > 0.090 && ratio < 0.096 && elapsed <= kCrossoverSeconds,
          fmt("theta'/pi = %.9f, %.2f s", ratio, elapsed)};
}

Outcome endpoints() {
  double worst = 0.0;
  const SweepRecord zero = evaluate_record(0.0);
  for (double v : {zero.mutual_info, zero.classical_info, zero.clone_info})
    worst = std::max(worst, std::abs(v - 1.0));
  worst = std::max(worst, std::abs(zero.discord));
  const SweepRecord quarter = evaluate_record(kPi / 4);
  for (double v : {quarter.mutual_info, quarter.classical_info, quarter.clone_info, quarter.discord})
    worst = std::max(worst, std::abs(v));
  return {worst <= kEndpointTol, fmt("max deviation %.3g", worst)};
}

Outcome dual_route() {
  const auto start = Clock::now();
  const auto grid = unit_grid(101);
  const auto records = run_sweep(grid);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    worst = std::max(worst, std::abs(records[i].classical_info -
                                     classical_correlation_kw(example_state(grid[i]))));
  }
  const double elapsed = seconds_since(start);
  return {worst <= kDualRouteTol && elapsed <= kDualRouteSeconds,
          fmt("max |Ic - Ic_kw| %.3g over 101 points, %.2f s", worst, elapsed)};
}

Outcome identity() {
  double worst = 0.0;
  for (const auto& r : run_sweep(unit_grid(101)))
    worst = std::max(worst, std::abs(r.classical_info + r.discord - r.mutual_info));
  for (std::uint64_t k = 0; k < 100; ++k) {
    const auto report = classical_correlation(random_two_qubit(kSeed + k));
    worst = std::max(worst, std::abs(report.classical_info + report.discord - report.mutual_info));
  }
  return {worst <= kIdentityTol, fmt("max |Ic + discord - I| %.3g", worst)};
}

Outcome pure_gap() {
  double worst = 0.0;
  for (std::uint64_t k = 0; k < 100; ++k) {
    const DensityMatrix rho(random_pure_state(kPair, kSeed + 1000 + k));
    const double entropy = von_neumann_entropy(partial_trace(rho, {0}));
    const auto report = classical_correlation(rho);
    worst = std::max(worst, std::abs(report.discord - entropy));
    worst = std::max(worst, std::abs(report.mutual_info - 2.0 * report.classical_info));
  }
  return {worst <= kPureGapTol, fmt("max deviation %.3g over 100 states", worst)};
}

Outcome broadcast_bound() {
  double worst_excess = -INFINITY;
  for (std::uint64_t k = 0; k < 200; ++k) {
    const StateVector psi = random_pure_state(kPair, kSeed + 2000 + k);
    const BroadcastIsometry v = BroadcastIsometry::random(2, {2, 2}, 1 + k % 4, kSeed + 3000 + k);
    const DensityMatrix out = apply_broadcast(psi, v);
    const double entropy = von_neumann_entropy(partial_trace(DensityMatrix(psi), {0}));
    worst_excess = std::max(worst_excess, recipient_information(out, 0) +
                                              recipient_information(out, 1) - 2.0 * entropy);
  }
  const DensityMatrix source = example_state(0.0);
  const DensityMatrix copied = apply_broadcast(source, BroadcastIsometry::classical_copy(2, 2));
  const double saturation =
      std::abs(recipient_information(copied, 0) + recipient_information(copied, 1) -
               2.0 * von_neumann_entropy(partial_trace(source, {0})));
  bool average_ok = true;
  for (std::uint64_t k = 0; k < 50; ++k) {
    average_ok = average_ok &&
                 average_bound_check(random_pure_state(kPair, kSeed + 4000 + k),
                                     BroadcastIsometry::random(2, {2, 2, 2}, 1 + k % 2, kSeed + 5000 + k));
  }
  return {worst_excess <= kBoundSlack && saturation <= kBoundSlack && average_ok,
          fmt("max excess %.3g, copy-channel gap %.3g, n=3 average %s", worst_excess, saturation,
              average_ok ? "ok" : "violated")};
}

Outcome protocol_consistency() {
  double worst_transfer = 0.0;
  double worst_excess = -INFINITY;
  double min_pt = INFINITY;
  constexpr int kStates = 50;
  constexpr int kPerState = 10;
  for (int s = 0; s < kStates; ++s) {
    const DensityMatrix rho = random_two_qubit(kSeed + 6000 + s);
    const double optimum = classical_correlation(rho).classical_info;
    for (int m = 0; m < kPerState; ++m) {
      const std::uint64_t seed = kSeed + 7000 + s * kPerState + m;
      const Povm povm = random_rank_one_povm(2, 2 + seed % 3, seed);
      const double j = accessible_information(rho, povm);
      worst_transfer = std::max(worst_transfer, std::abs(locc_transfer_info(rho, povm) - j));
      worst_excess = std::max(worst_excess, j - optimum);
      std::vector<DensityMatrix> prepared;
      for (std::size_t i = 0; i < povm.size(); ++i)
        prepared.push_back(random_density_matrix(SubsystemLayout{2}, 2, seed * 8 + i));
      const DensityMatrix out = measure_and_prepare(rho, PreparedEnsembleChannel(povm, prepared));
      min_pt = std::min(min_pt,
                        hermitian_eigenvalues(partial_transpose(out.matrix(), out.layout(), 1)).back());
    }
  }
  return {worst_transfer <= kTransferTol && worst_excess <= kOptimumSlack && min_pt >= -kSeparabilityTol,
          fmt("500 measurements: max |transfer - J| %.3g, max J - Ic %.3g, min PT eigenvalue %.3g",
              worst_transfer, worst_excess, min_pt)};
}

Outcome cloner_validity() {
  double worst_fidelity = 0.0;
  double worst_overlap = 0.0;
  const SubsystemLayout qubit{2};
  for (double t : unit_grid(101)) {
    const StateVector psi(qubit, record_state_psi(t));
    const StateVector phi(qubit, record_state_phi(t));
    const ClonerOutput c = optimal_state_dependent_cloner(psi, phi);
    const Complex s = inner(psi.amplitudes(), phi.amplitudes());
    worst_fidelity =
        std::max(worst_fidelity, std::abs(c.global_fidelity - testing::cloner_fidelity_scan(s.real())));
    worst_overlap = std::max(worst_overlap, std::abs(inner(c.alpha.amplitudes(), c.beta.amplitudes()) - s));
  }
  return {worst_fidelity <= kFidelityTol && worst_overlap <= kOverlapTol,
          fmt("max fidelity gap %.3g, max overlap gap %.3g", worst_fidelity, worst_overlap)};
}

Outcome sweep_shape() {
  const auto records = run_sweep(unit_grid(200));
  std::vector<double> diff;
  bool ic_monotone = true;
  bool clone_monotone = true;
  for (std::size_t i = 0; i < records.size(); ++i) {
    diff.push_back(records[i].diff);
    if (i > 0) {
      ic_monotone = ic_monotone && records[i].classical_info <= records[i - 1].classical_info + kMonotoneSlack;
      clone_monotone = clone_monotone && records[i].clone_info <= records[i - 1].clone_info + kMonotoneSlack;
    }
  }
  const int changes = count_sign_changes(diff);
  const bool clone_ends = std::abs(records.front().clone_info - 1.0) <= kEndpointTol &&
                          std::abs(records.back().clone_info) <= kEndpointTol;
  return {changes == 1 && ic_monotone && clone_monotone && clone_ends,
          fmt("sign changes %d, Ic monotone %s, I_clone monotone %s, I_clone %.6f -> %.6f", changes,
              ic_monotone ? "yes" : "no", clone_monotone ? "yes" : "no", records.front().clone_info,
              records.back().clone_info)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"crossover angle", crossover},
      {"endpoint exactness", endpoints},
      {"dual-route agreement", dual_route},
      {"correlation identity", identity},
      {"pure-state gap", pure_gap},
      {"broadcast bound", broadcast_bound},
      {"protocol consistency", protocol_consistency},
      {"cloner validity", cloner_validity},
      {"sweep shape", sweep_shape},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s criterion %zu (%s): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
