#pragma once

// Seeded property suites over every module. Each check compares an observed
// defect against a pinned limit; the limit is multiplied by
// `tolerance_scale`, which exists so harnesses can exercise the failure path.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "qdiscord/correlations.hpp"
#include "qdiscord/koashi_winter.hpp"
#include "qdiscord/protocols.hpp"
#include "qdiscord/states.hpp"
#include "qdiscord/testing/oracles.hpp"

namespace qdiscord {

struct PropertyFailure {
  std::string suite;
  std::string property;
  std::uint64_t seed;
  double observed;
  double limit;
};

struct SuiteSummary {
  std::string name;
  int checks = 0;
  int failures = 0;
};

struct VerificationSummary {
  std::uint64_t seed = 0;
  int samples = 0;
  std::vector<SuiteSummary> suites;
  std::vector<PropertyFailure> failures;  // first kMaxReportedFailures only
  int total_failures = 0;
  bool passed() const noexcept { return total_failures == 0; }
};

struct VerifyOptions {
  std::uint64_t seed = 20130901;
  int samples = 100;
  double tolerance_scale = 1.0;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

namespace detail {

constexpr std::size_t kMaxReportedFailures = 50;

class PropertyRecorder {
 public:
  PropertyRecorder(VerificationSummary& summary, std::string name, double scale)
      : summary_(summary), scale_(scale) {
    summary_.suites.push_back({std::move(name), 0, 0});
  }

  /// Passes when observed <= limit * scale.
  void at_most(std::string_view property, std::uint64_t seed, double observed, double limit) {
    auto& suite = summary_.suites.back();
    ++suite.checks;
    if (observed <= limit * scale_) return;
    fail(property, seed, observed, limit);
  }

  void exception(std::uint64_t seed, const std::exception& e) {
    ++summary_.suites.back().checks;
    fail(std::string("exception: ") + e.what(), seed, NAN, 0.0);
  }

 private:
  void fail(std::string_view property, std::uint64_t seed, double observed, double limit) {
    auto& suite = summary_.suites.back();
    ++suite.failures;
    ++summary_.total_failures;
    if (summary_.failures.size() < kMaxReportedFailures) {
      summary_.failures.push_back(
          {suite.name, std::string(property), seed, observed, limit});
    }
  }

  VerificationSummary& summary_;
  double scale_;
};

/// Seed for draw `slot` of sample `sample` in suite `suite`.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t suite, int sample,
                                 std::uint64_t slot = 0) {
  return splitmix64(splitmix64(master ^ (suite << 48)) + static_cast<std::uint64_t>(sample) * 16 +
                    slot);
}

inline double unit_interval(std::uint64_t seed) {
  return static_cast<double>(splitmix64(seed) >> 11) * 0x1.0p-53;
}

inline Matrix local_unitary(std::uint64_t seed_s, std::uint64_t seed_a) {
  return tensor(random_unitary(2, seed_s), random_unitary(2, seed_a));
}

inline DensityMatrix conjugated(const DensityMatrix& rho, const Matrix& u) {
  Matrix m = u * rho.matrix() * u.adjoint();
  m = 0.5 * (m + m.adjoint());
  return DensityMatrix(rho.layout(), std::move(m));
}

inline double min_eigenvalue(const Matrix& m) {
  Matrix h = 0.5 * (m + m.adjoint());
  return hermitian_eigenvalues(h).back();
}

inline void core_linalg_suite(const VerifyOptions& o, VerificationSummary& summary) {
  PropertyRecorder check(summary, "core_linalg", o.tolerance_scale);
  for (int i = 0; i < o.samples; ++i) {
    const std::uint64_t seed = derive_seed(o.seed, 1, i);
    try {
      const SubsystemLayout three{2, 2, 2};
      const DensityMatrix rho = random_density_matrix(three, 1 + static_cast<std::size_t>(i % 8), seed);
      std::vector<std::size_t> keep;
      const unsigned mask = 1 + static_cast<unsigned>(splitmix64(seed) % 7);
      for (std::size_t k = 0; k < 3; ++k)
        if (mask & (1u << k)) keep.push_back(k);
      const Matrix reduced = partial_trace(rho.matrix(), three, keep);
      check.at_most("partial_trace preserves trace", seed,
                    std::abs(reduced.trace() - Complex{1.0}), 1e-10);
      check.at_most("partial_trace preserves Hermiticity", seed, hermiticity_defect(reduced),
                    1e-10);

      const auto spectrum = hermitian_eigenvalues(rho.matrix());
      check.at_most("eigenvalues >= 0", seed, -spectrum.back(), 1e-10);
      check.at_most("eigenvalues <= 1", seed, spectrum.front() - 1.0, 1e-10);
      double sum = 0.0;
      for (double x : spectrum) sum += x;
      check.at_most("eigenvalues sum to 1", seed, std::abs(sum - 1.0), 1e-9);

      const DensityMatrix a = random_density_matrix(SubsystemLayout{2}, 2, derive_seed(o.seed, 1, i, 1));
      const DensityMatrix b = random_density_matrix(SubsystemLayout{3}, 3, derive_seed(o.seed, 1, i, 2));
      check.at_most("entropy additivity", seed,
                    std::abs(von_neumann_entropy(tensor(a, b)) - von_neumann_entropy(a) -
                             von_neumann_entropy(b)),
                    1e-9);

      const Matrix u = random_unitary(8, derive_seed(o.seed, 1, i, 3));
      check.at_most("entropy unitary invariance", seed,
                    std::abs(von_neumann_entropy(conjugated(rho, u)) - von_neumann_entropy(rho)),
                    1e-9);

      const DensityMatrix round_trip = partial_trace(DensityMatrix(purify(rho)), {0, 1, 2});
      check.at_most("purify then partial_trace", seed,
                    max_abs_diff(round_trip.matrix(), rho.matrix()), 1e-9);
    } catch (const std::exception& e) {
      check.exception(seed, e);
    }
  }
}

inline void correlations_suite(const VerifyOptions& o, VerificationSummary& summary) {
  PropertyRecorder check(summary, "correlations", o.tolerance_scale);
  const SubsystemLayout pair{2, 2};
  for (int i = 0; i < o.samples; ++i) {
    const std::uint64_t seed = derive_seed(o.seed, 2, i);
    try {
      const DensityMatrix rho = random_density_matrix(pair, i % 2 == 0 ? 4 : 2, seed);
      const CorrelationReport report = classical_correlation(rho);
      check.at_most("Ic + discord = I", seed,
                    std::abs(report.classical_info + report.discord - report.mutual_info), 1e-8);
      check.at_most("discord >= 0", seed, -report.discord, 1e-8);
      check.at_most("Ic <= I", seed, report.classical_info - report.mutual_info, 1e-8);

      const Povm m = random_rank_one_povm(2, 2 + static_cast<std::size_t>(i % 3),
                                          derive_seed(o.seed, 2, i, 1));
      const double j = accessible_information(rho, m);
      check.at_most("J >= 0", seed, -j, 1e-8);
      check.at_most("sampled J <= Ic", seed, j - report.classical_info, 1e-8);

      const CorrelationReport again = classical_correlation(rho);
      check.at_most("optimizer determinism", seed,
                    again.classical_info == report.classical_info &&
                            again.discord == report.discord
                        ? 0.0
                        : 1.0,
                    0.0);

      const Matrix u = local_unitary(derive_seed(o.seed, 2, i, 2), derive_seed(o.seed, 2, i, 3));
      const CorrelationReport rotated = classical_correlation(conjugated(rho, u));
      check.at_most("Ic local-unitary invariance", seed,
                    std::abs(rotated.classical_info - report.classical_info), 1e-6);
      check.at_most("discord local-unitary invariance", seed,
                    std::abs(rotated.discord - report.discord), 1e-6);

      // Classical-quantum state: sum_i p_i rho_i (x) |i><i| in a random basis of A.
      const double p = unit_interval(derive_seed(o.seed, 2, i, 4));
      const Matrix basis = random_unitary(2, derive_seed(o.seed, 2, i, 5));
      Matrix cq(4, 4);
      for (std::size_t k = 0; k < 2; ++k) {
        const DensityMatrix branch =
            random_density_matrix(SubsystemLayout{2}, 2, derive_seed(o.seed, 2, i, 6 + k));
        const Vector flag = {basis(0, k), basis(1, k)};
        cq += tensor(branch.matrix(), projector(flag)) * (k == 0 ? p : 1.0 - p);
      }
      cq = 0.5 * (cq + cq.adjoint());
      const CorrelationReport classical = classical_correlation(DensityMatrix(pair, cq));
      check.at_most("cq-state discord = 0", seed, std::abs(classical.discord), 1e-6);

      const StateVector psi = random_pure_state(pair, derive_seed(o.seed, 2, i, 8));
      const DensityMatrix pure(psi);
      const double system_entropy = von_neumann_entropy(partial_trace(pure, {0}));
      const CorrelationReport pure_report = classical_correlation(pure);
      check.at_most("pure: discord = S(rho^S)", seed,
                    std::abs(pure_report.discord - system_entropy), 1e-6);
      check.at_most("pure: Ic = S(rho^S)", seed,
                    std::abs(pure_report.classical_info - system_entropy), 1e-6);
      check.at_most("pure: I = 2 Ic", seed,
                    std::abs(pure_report.mutual_info - 2.0 * pure_report.classical_info), 1e-6);
    } catch (const std::exception& e) {
      check.exception(seed, e);
    }
  }
}

inline void koashi_winter_suite(const VerifyOptions& o, VerificationSummary& summary) {
  PropertyRecorder check(summary, "koashi_winter", o.tolerance_scale);
  const SubsystemLayout pair{2, 2};
  for (int i = 0; i < o.samples; ++i) {
    const std::uint64_t seed = derive_seed(o.seed, 3, i);
    try {
      const double theta = kMaxExampleAngle * unit_interval(seed);
      const DensityMatrix rho = example_state(theta);
      const double kw = classical_correlation_kw(rho);
      check.at_most("Koashi-Winter = optimizer", seed,
                    std::abs(kw - classical_correlation(rho).classical_info), 1e-4);

      const double other = kMaxExampleAngle * unit_interval(derive_seed(o.seed, 3, i, 1));
      const double kw_other = classical_correlation_kw(example_state(other));
      const double rise = theta < other ? kw_other - kw : kw - kw_other;
      check.at_most("Koashi-Winter nonincreasing in theta", seed, rise, 1e-9);

      const DensityMatrix mixed = random_density_matrix(pair, 4, derive_seed(o.seed, 3, i, 2));
      const Matrix u = local_unitary(derive_seed(o.seed, 3, i, 3), derive_seed(o.seed, 3, i, 4));
      check.at_most("concurrence local-unitary invariance", seed,
                    std::abs(concurrence(conjugated(mixed, u)) - concurrence(mixed)), 1e-8);

      const DensityMatrix pure(random_pure_state(pair, derive_seed(o.seed, 3, i, 5)));
      check.at_most("E_F(pure) = entropy of reduction", seed,
                    std::abs(entanglement_of_formation(pure) -
                             von_neumann_entropy(partial_trace(pure, {0}))),
                    1e-8);
    } catch (const std::exception& e) {
      check.exception(seed, e);
    }
  }
}

/// Norm of the component of v outside span{a, b}.
inline double span_residual(const Vector& v, const Vector& a, const Vector& b) {
  Vector e2 = b;
  const Complex ab = inner(a, b);
  for (std::size_t k = 0; k < e2.size(); ++k) e2[k] -= ab * a[k];
  const double n2 = norm(e2);
  Vector r = v;
  const Complex c1 = inner(a, v);
  for (std::size_t k = 0; k < r.size(); ++k) r[k] -= c1 * a[k];
  if (n2 > 1e-12) {
    for (auto& z : e2) z /= n2;
    const Complex c2 = inner(e2, v);
    for (std::size_t k = 0; k < r.size(); ++k) r[k] -= c2 * e2[k];
  }
  return norm(r);
}

inline void protocols_suite(const VerifyOptions& o, VerificationSummary& summary) {
  PropertyRecorder check(summary, "protocols", o.tolerance_scale);
  const SubsystemLayout pair{2, 2};
  const SubsystemLayout qubit{2};
  for (int i = 0; i < o.samples; ++i) {
    const std::uint64_t seed = derive_seed(o.seed, 4, i);
    try {
      const DensityMatrix rho = random_density_matrix(pair, 4, seed);
      const std::size_t outcomes = 2 + static_cast<std::size_t>(i % 3);
      const Povm m = random_rank_one_povm(2, outcomes, derive_seed(o.seed, 4, i, 1));
      std::vector<DensityMatrix> prepared;
      for (std::size_t k = 0; k < outcomes; ++k)
        prepared.push_back(random_density_matrix(qubit, 2, derive_seed(o.seed, 4, i, 2 + k)));
      const DensityMatrix relayed = measure_and_prepare(rho, PreparedEnsembleChannel(m, prepared));
      check.at_most("measure-and-prepare output has PPT", seed,
                    -min_eigenvalue(partial_transpose(relayed.matrix(), relayed.layout(), 1)), 1e-9);
      check.at_most("data processing I(S:R) <= I(S:A)", seed,
                    mutual_information(relayed) - mutual_information(rho), 1e-8);

      const double locc = locc_transfer_info(rho, m);
      check.at_most("LOCC transfer = J", seed, std::abs(locc - accessible_information(rho, m)),
                    1e-9);
      check.at_most("LOCC transfer <= Ic", seed,
                    locc - classical_correlation(rho).classical_info, 1e-8);

      const double theta = kMaxExampleAngle * unit_interval(derive_seed(o.seed, 4, i, 8));
      const StateVector psi(qubit, record_state_psi(theta));
      const StateVector phi(qubit, record_state_phi(theta));
      const double s = std::sin(2.0 * theta);
      const ClonerOutput clones = optimal_state_dependent_cloner(psi, phi);
      check.at_most("cloner fidelity = constrained scan", seed,
                    std::abs(clones.global_fidelity - testing::cloner_fidelity_scan(s)), 1e-6);
      check.at_most("cloner preserves overlap", seed,
                    std::abs(inner(clones.alpha.amplitudes(), clones.beta.amplitudes()) - s), 1e-8);
      const Vector pp = tensor(psi.amplitudes(), psi.amplitudes());
      const Vector ff = tensor(phi.amplitudes(), phi.amplitudes());
      check.at_most("cloner outputs in target span", seed,
                    std::max(span_residual(clones.alpha.amplitudes(), pp, ff),
                             span_residual(clones.beta.amplitudes(), pp, ff)),
                    1e-8);
      const DensityMatrix cloned = cloned_example_state(theta);
      check.at_most("cloning symmetric I(S:R1) = I(S:R2)", seed,
                    std::abs(recipient_information(cloned, 0) - recipient_information(cloned, 1)),
                    1e-9);

      const StateVector source = random_pure_state(pair, derive_seed(o.seed, 4, i, 9));
      const double system_entropy = von_neumann_entropy(partial_trace(DensityMatrix(source), {0}));
      const std::size_t ancilla = std::size_t{1} << (i % 3);
      const auto two = apply_broadcast(
          source, BroadcastIsometry::random(2, {2, 2}, ancilla, derive_seed(o.seed, 4, i, 10)));
      const double i1 = recipient_information(two, 0);
      const double i2 = recipient_information(two, 1);
      check.at_most("I(S:R1) + I(S:R2) <= 2 S(rho^S)", seed, i1 + i2 - 2.0 * system_entropy, 1e-8);
      check.at_most("min_i I(S:R_i) <= S(rho^S)", seed, std::min(i1, i2) - system_entropy, 1e-8);

      const auto three = apply_broadcast(
          source, BroadcastIsometry::random(2, {2, 2, 2}, ancilla, derive_seed(o.seed, 4, i, 11)));
      check.at_most("average bound, three recipients", seed,
                    average_recipient_information(three) - system_entropy, 1e-8);
    } catch (const std::exception& e) {
      check.exception(seed, e);
    }
  }
}

}  // namespace detail

inline VerificationSummary run_verification(const VerifyOptions& options = {}) {
  if (options.samples < 1) throw std::invalid_argument("verify: samples must be >= 1");
  VerificationSummary summary;
  summary.seed = options.seed;
  summary.samples = options.samples;
  detail::core_linalg_suite(options, summary);
  detail::correlations_suite(options, summary);
  detail::koashi_winter_suite(options, summary);
  detail::protocols_suite(options, summary);
  return summary;
}

}  // namespace qdiscord
