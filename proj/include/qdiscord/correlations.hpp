#pragma once

// Mutual information, measurement-accessible information J, discord, and the
// classical correlation I^c = max_J over apparatus measurements.

#include <algorithm>
#include <array>
#include <cstdint>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "qdiscord/linalg.hpp"
#include "qdiscord/nelder_mead.hpp"
#include "qdiscord/states.hpp"

namespace qdiscord {

/// Outcomes with probability at or below this are dropped from ensembles.
constexpr double kZeroProbability = 1e-12;

class Povm {
 public:
  explicit Povm(std::vector<Matrix> elements) : elements_(std::move(elements)) {
    if (elements_.empty()) throw std::invalid_argument("Povm: no elements");
    const std::size_t d = elements_.front().rows();
    Matrix sum(d, d);
    for (const auto& e : elements_) {
      if (!e.is_square() || e.rows() != d) {
        throw std::invalid_argument("Povm: elements must share one square shape");
      }
      if (hermiticity_defect(e) > kStateTolerance ||
          hermitian_eigenvalues(e).back() < -kStateTolerance) {
        throw std::invalid_argument("Povm: element is not positive semidefinite");
      }
      sum += e;
    }
    if (max_abs_diff(sum, Matrix::identity(d)) > 1e-9) {
      throw std::invalid_argument("Povm: elements do not sum to identity");
    }
  }

  const std::vector<Matrix>& elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  std::size_t dim() const noexcept { return elements_.front().rows(); }

  static Povm trivial(std::size_t d) { return Povm({Matrix::identity(d)}); }

  static Povm computational_basis(std::size_t d) {
    std::vector<Matrix> elements;
    for (std::size_t i = 0; i < d; ++i) elements.push_back(projector(basis_vector(d, i)));
    return Povm(std::move(elements));
  }

 private:
  std::vector<Matrix> elements_;
};

struct MeasurementOutcome {
  std::size_t element;  // index into the Povm
  double probability;
  DensityMatrix state;  // conditional state of S
};

struct MeasurementEnsemble {
  std::vector<MeasurementOutcome> outcomes;
};

struct CorrelationReport {
  double mutual_info = 0.0;
  double classical_info = 0.0;
  double discord = 0.0;
  Povm measurement = Povm::trivial(2);
};

namespace detail {

inline void require_bipartite(const DensityMatrix& rho) {
  if (rho.layout().count() != 2) {
    throw std::invalid_argument("expected a bipartite S (x) A layout");
  }
}

inline void require_apparatus_match(const DensityMatrix& rho, const Povm& m) {
  require_bipartite(rho);
  if (m.dim() != rho.layout().dim(1)) {
    throw std::invalid_argument("Povm dimension does not match the apparatus");
  }
}

/// Tr_A[(1 (x) E) rho], Hermitian-symmetrized.
inline Matrix apparatus_conditioned(const Matrix& rho, std::size_t ds, std::size_t da,
                                    const Matrix& effect) {
  Matrix out(ds, ds);
  for (std::size_t s = 0; s < ds; ++s)
    for (std::size_t t = 0; t < ds; ++t) {
      Complex acc = 0.0;
      for (std::size_t a = 0; a < da; ++a)
        for (std::size_t b = 0; b < da; ++b)
          acc += rho(s * da + a, t * da + b) * effect(b, a);
      out(s, t) = acc;
    }
  for (std::size_t s = 0; s < ds; ++s) {
    out(s, s) = std::real(out(s, s));
    for (std::size_t t = s + 1; t < ds; ++t) {
      const Complex avg = 0.5 * (out(s, t) + std::conj(out(t, s)));
      out(s, t) = avg;
      out(t, s) = std::conj(avg);
    }
  }
  return out;
}

/// sum_i p_i S(rho_i^S), evaluated from the unnormalized conditionals.
inline double average_conditional_entropy(const Matrix& rho, std::size_t ds, std::size_t da,
                                          std::span<const Matrix> effects) {
  double total = 0.0;
  for (const auto& effect : effects) {
    const Matrix conditioned = apparatus_conditioned(rho, ds, da, effect);
    const double p = std::real(conditioned.trace());
    if (p <= kZeroProbability) continue;
    for (double mu : hermitian_eigenvalues(conditioned))
      if (mu > kEntropyClip * p) total -= mu * std::log2(mu / p);
  }
  return total;
}

}  // namespace detail

/// I(S:A) = S(rho^S) + S(rho^A) - S(rho^SA) in bits.
inline double mutual_information(const DensityMatrix& rho) {
  detail::require_bipartite(rho);
  const Matrix& m = rho.matrix();
  const std::size_t first[] = {0};
  const std::size_t second[] = {1};
  return matrix_entropy(partial_trace(m, rho.layout(), first)) +
         matrix_entropy(partial_trace(m, rho.layout(), second)) - matrix_entropy(m);
}

inline MeasurementEnsemble post_measurement_ensemble(const DensityMatrix& rho, const Povm& m) {
  detail::require_apparatus_match(rho, m);
  const std::size_t ds = rho.layout().dim(0);
  const std::size_t da = rho.layout().dim(1);
  MeasurementEnsemble ensemble;
  for (std::size_t i = 0; i < m.size(); ++i) {
    Matrix conditioned = detail::apparatus_conditioned(rho.matrix(), ds, da, m.elements()[i]);
    const double p = std::real(conditioned.trace());
    if (p <= kZeroProbability) continue;
    conditioned *= 1.0 / p;
    ensemble.outcomes.push_back(
        {i, p, DensityMatrix(SubsystemLayout{ds}, std::move(conditioned))});
  }
  return ensemble;
}

/// J(S:A)_m = S(rho^S) - sum_i p_i S(rho_i^S).
inline double accessible_information(const DensityMatrix& rho, const Povm& m) {
  detail::require_apparatus_match(rho, m);
  const std::size_t first[] = {0};
  const double system_entropy = matrix_entropy(partial_trace(rho.matrix(), rho.layout(), first));
  double conditional = 0.0;
  for (const auto& outcome : post_measurement_ensemble(rho, m).outcomes)
    conditional += outcome.probability * von_neumann_entropy(outcome.state);
  return system_entropy - conditional;
}

inline double discord_given_measurement(const DensityMatrix& rho, const Povm& m) {
  return mutual_information(rho) - accessible_information(rho, m);
}

/// {|v><v|, 1 - |v><v|} with |v> = cos(t/2)|0> + e^{i p} sin(t/2)|1>.
inline Povm qubit_projective_povm(double polar, double azimuth) {
  const Vector v = {std::cos(polar / 2.0), std::polar(1.0, azimuth) * std::sin(polar / 2.0)};
  const Matrix p = projector(v);
  return Povm({p, Matrix::identity(2) - p});
}

/// Rank-one three-outcome qubit POVM from Bloch directions (polar, azimuth)
/// for each outcome and two angles mapping onto weights on the 2-simplex.
/// Elements are G^{-1/2} w_k |n_k><n_k| G^{-1/2} with G = sum_k w_k |n_k><n_k|.
/// Throws when the directions do not span the qubit space.
inline Povm qubit_three_outcome_povm(const std::array<double, 8>& params) {
  const double w0 = std::pow(std::cos(params[6]), 2);
  const double rest = std::pow(std::sin(params[6]), 2);
  const std::array<double, 3> weights = {w0, rest * std::pow(std::cos(params[7]), 2),
                                         rest * std::pow(std::sin(params[7]), 2)};
  std::array<Matrix, 3> raw;
  Matrix frame(2, 2);
  for (std::size_t k = 0; k < 3; ++k) {
    const double polar = params[2 * k];
    const double azimuth = params[2 * k + 1];
    const Vector n = {std::cos(polar / 2.0), std::polar(1.0, azimuth) * std::sin(polar / 2.0)};
    raw[k] = projector(n) * weights[k];
    frame += raw[k];
  }
  const EigenSystem es = hermitian_eigensystem(frame);
  if (es.values.back() < 1e-12) {
    throw std::domain_error("qubit_three_outcome_povm: directions do not span the qubit");
  }
  const Matrix inv_sqrt = hermitian_function(frame, [](double x) { return 1.0 / std::sqrt(x); });
  std::vector<Matrix> elements;
  for (const auto& r : raw) elements.push_back(inv_sqrt * r * inv_sqrt);
  // Restore exact completeness lost to rounding in the last element.
  Matrix last = Matrix::identity(2) - elements[0] - elements[1];
  elements[2] = 0.5 * (last + last.adjoint());
  return Povm(std::move(elements));
}

/// Random rank-one POVM with `outcomes` elements on C^d: Gaussian vectors
/// |a_k> normalized through G^{-1/2}|a_k><a_k|G^{-1/2}, G = sum_k |a_k><a_k|.
inline Povm random_rank_one_povm(std::size_t d, std::size_t outcomes, std::uint64_t seed) {
  if (outcomes < d) throw std::invalid_argument("random_rank_one_povm: need outcomes >= d");
  const Matrix g = detail::gaussian_matrix(d, outcomes, seed);
  Matrix frame(d, d);
  std::vector<Matrix> raw;
  for (std::size_t k = 0; k < outcomes; ++k) {
    Vector a(d);
    for (std::size_t i = 0; i < d; ++i) a[i] = g(i, k);
    raw.push_back(projector(a));
    frame += raw.back();
  }
  const Matrix inv_sqrt = hermitian_function(frame, [](double x) { return 1.0 / std::sqrt(x); });
  std::vector<Matrix> elements;
  for (const auto& r : raw) {
    Matrix e = inv_sqrt * r * inv_sqrt;
    elements.push_back(0.5 * (e + e.adjoint()));
  }
  return Povm(std::move(elements));
}

enum class MeasurementClass {
  kProjective,           // rank-one two-outcome projective measurements
  kRankOneThreeOutcome,  // projective plus rank-one three-outcome POVMs
};

struct CorrelationOptions {
  MeasurementClass measurement_class = MeasurementClass::kProjective;
  int polar_cells = 64;
  int azimuth_cells = 128;
  int refine_starts = 5;
  SimplexOptions simplex{std::numbers::pi / 64.0, 1e-10, 500};
};

/// I^c = max_m J(S:A)_m and discord = I - I^c for a qubit apparatus.
///
/// Projective search: evaluate the conditional entropy on a polar x azimuth
/// grid of measurement directions, refine the best `refine_starts` cells with
/// Nelder-Mead, keep the overall best. The three-outcome mode then restarts
/// the simplex in the 8-parameter POVM family from each refined projective
/// optimum. Fully deterministic.
inline CorrelationReport classical_correlation(const DensityMatrix& rho,
                                               const CorrelationOptions& options = {}) {
  detail::require_bipartite(rho);
  if (rho.layout().dim(1) != 2) {
    throw std::invalid_argument("classical_correlation: apparatus must be a qubit");
  }
  const std::size_t ds = rho.layout().dim(0);
  const Matrix& m = rho.matrix();

  auto projective_cost = [&](double polar, double azimuth) {
    const Povm povm = qubit_projective_povm(polar, azimuth);
    return detail::average_conditional_entropy(m, ds, 2, povm.elements());
  };

  struct Cell {
    double polar, azimuth, cost;
  };
  std::vector<Cell> cells;
  cells.reserve(static_cast<std::size_t>(options.polar_cells * options.azimuth_cells));
  for (int i = 0; i < options.polar_cells; ++i) {
    const double polar = std::numbers::pi * i / options.polar_cells;
    for (int j = 0; j < options.azimuth_cells; ++j) {
      const double azimuth = 2.0 * std::numbers::pi * j / options.azimuth_cells;
      cells.push_back({polar, azimuth, projective_cost(polar, azimuth)});
    }
  }
  std::stable_sort(cells.begin(), cells.end(),
                   [](const Cell& a, const Cell& b) { return a.cost < b.cost; });

  double best_cost = cells.front().cost;
  Povm best = qubit_projective_povm(cells.front().polar, cells.front().azimuth);
  std::vector<std::array<double, 2>> refined;

  const auto starts = std::min<std::size_t>(cells.size(),
                                            static_cast<std::size_t>(options.refine_starts));
  for (std::size_t s = 0; s < starts; ++s) {
    const auto result = nelder_mead(
        [&](const std::array<double, 2>& x) { return projective_cost(x[0], x[1]); },
        std::array<double, 2>{cells[s].polar, cells[s].azimuth}, options.simplex);
    refined.push_back(result.point);
    if (result.value < best_cost) {
      best_cost = result.value;
      best = qubit_projective_povm(result.point[0], result.point[1]);
    }
  }

  if (options.measurement_class == MeasurementClass::kRankOneThreeOutcome) {
    auto povm_cost = [&](const std::array<double, 8>& x) {
      try {
        const Povm povm = qubit_three_outcome_povm(x);
        return detail::average_conditional_entropy(m, ds, 2, povm.elements());
      } catch (const std::domain_error&) {
        return std::numeric_limits<double>::infinity();
      }
    };
    for (const auto& p : refined) {
      // Start from the projective optimum: outcome 2 splits off 1/10 of the
      // weight along the first direction, so the start reproduces it exactly.
      const std::array<double, 8> start = {p[0], p[1], p[0] + std::numbers::pi, p[1],
                                           p[0], p[1], std::acos(std::sqrt(0.45)),
                                           std::atan(std::sqrt(0.1))};
      const auto result = nelder_mead(povm_cost, start, options.simplex);
      if (result.value < best_cost) {
        best_cost = result.value;
        best = qubit_three_outcome_povm(result.point);
      }
    }
  }

  const std::size_t first[] = {0};
  CorrelationReport report;
  report.mutual_info = mutual_information(rho);
  report.classical_info = matrix_entropy(partial_trace(m, rho.layout(), first)) - best_cost;
  report.discord = report.mutual_info - report.classical_info;
  report.measurement = std::move(best);
  return report;
}

}  // namespace qdiscord
