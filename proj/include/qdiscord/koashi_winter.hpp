#pragma once

// Closed-form classical correlation for rank <= 2 states with a qubit system,
// through the purifying qubit C:  I^c(S|A) = S(rho^S) - E_F(rho^SC).

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qdiscord/linalg.hpp"
#include "qdiscord/states.hpp"

namespace qdiscord {

constexpr double kMaxExampleAngle = std::numbers::pi / 4.0;

/// Mixing angle of the two apparatus record states, restricted to [0, pi/4].
class ExampleStateParams {
 public:
  explicit ExampleStateParams(double theta) : theta_(theta) {
    // Absorb rounding from inputs such as 0.25 * pi or grid endpoints.
    constexpr double kSlack = 1e-12;
    if (!(theta >= -kSlack && theta <= kMaxExampleAngle + kSlack)) {
      throw std::invalid_argument("theta must lie in [0, pi/4]");
    }
    theta_ = std::clamp(theta, 0.0, kMaxExampleAngle);
  }
  double theta() const noexcept { return theta_; }

 private:
  double theta_;
};

/// cos t |0> + sin t |1>
inline Vector record_state_psi(double theta) { return {std::cos(theta), std::sin(theta)}; }
/// sin t |0> + cos t |1>
inline Vector record_state_phi(double theta) { return {std::sin(theta), std::cos(theta)}; }

/// 1/2 |0><0| (x) |psi><psi| + 1/2 |1><1| (x) |phi><phi| on S (x) A.
inline DensityMatrix example_state(ExampleStateParams params) {
  const double t = params.theta();
  Matrix rho = tensor(projector(basis_vector(2, 0)), projector(record_state_psi(t))) * 0.5 +
               tensor(projector(basis_vector(2, 1)), projector(record_state_phi(t))) * 0.5;
  return DensityMatrix(SubsystemLayout{2, 2}, std::move(rho));
}

inline DensityMatrix example_state(double theta) {
  return example_state(ExampleStateParams(theta));
}

namespace detail {

inline void require_two_qubits(const DensityMatrix& rho) {
  if (rho.dim() != 4) throw std::invalid_argument("expected a two-qubit (4x4) state");
}

inline const Matrix& sigma_yy() {
  static const Matrix yy = [] {
    const Matrix y{{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}};
    return tensor(y, y);
  }();
  return yy;
}

}  // namespace detail

/// Wootters concurrence. With rho = W W^dagger (columns sqrt(p_k) v_k for
/// eigenvalues above kEntropyClip), the lambda_k are the singular values of
/// tau = W^T (Y (x) Y) W. For rank 2 the smaller one is |det tau| / sigma_max.
inline double concurrence(const DensityMatrix& rho) {
  detail::require_two_qubits(rho);
  const EigenSystem es = hermitian_eigensystem(rho.matrix());
  std::size_t rank = 0;
  while (rank < 4 && es.values[rank] > kEntropyClip) ++rank;
  if (rank == 0) return 0.0;
  Matrix w(4, rank);
  for (std::size_t k = 0; k < rank; ++k) {
    const double scale = std::sqrt(es.values[k]);
    for (std::size_t i = 0; i < 4; ++i) w(i, k) = scale * es.vectors(i, k);
  }
  const Matrix tau = w.transpose() * detail::sigma_yy() * w;
  std::array<double, 4> lambda{};
  if (rank == 1) {
    lambda[0] = std::abs(tau(0, 0));
  } else {
    Matrix gram = tau.adjoint() * tau;
    gram = 0.5 * (gram + gram.adjoint());
    const auto mu = hermitian_eigenvalues(gram);
    for (std::size_t k = 0; k < rank; ++k) lambda[k] = std::sqrt(std::max(0.0, mu[k]));
    if (rank == 2 && lambda[0] > 0.0) {
      lambda[1] = std::abs(tau(0, 0) * tau(1, 1) - tau(0, 1) * tau(1, 0)) / lambda[0];
    }
  }
  return std::clamp(lambda[0] - lambda[1] - lambda[2] - lambda[3], 0.0, 1.0);
}

inline double entanglement_of_formation_from_concurrence(double c) {
  if (!(c >= -1e-12 && c <= 1.0 + 1e-12)) {
    throw std::invalid_argument("concurrence outside [0, 1]");
  }
  c = std::clamp(c, 0.0, 1.0);
  return binary_entropy((1.0 + std::sqrt(1.0 - c * c)) / 2.0);
}

inline double entanglement_of_formation(const DensityMatrix& rho) {
  return entanglement_of_formation_from_concurrence(concurrence(rho));
}

/// Eigenvalues above this count toward the rank; matches purify().
constexpr double kRankTolerance = kEntropyClip;

inline double classical_correlation_kw(const DensityMatrix& rho) {
  if (rho.layout().count() != 2 || rho.layout().dim(0) != 2) {
    throw std::invalid_argument("classical_correlation_kw: system S must be a qubit");
  }
  const auto spectrum = hermitian_eigenvalues(rho.matrix());
  const auto rank = std::count_if(spectrum.begin(), spectrum.end(),
                                  [](double x) { return x > kRankTolerance; });
  if (rank > 2) {
    throw std::invalid_argument("classical_correlation_kw: rank exceeds 2");
  }

  const StateVector purified = purify(rho);  // layout (S, A, C)
  DensityMatrix whole(purified);
  if (purified.layout().dim(2) == 1) {
    // Embed a trivial purifier into a qubit so E_F sees two qubits.
    whole = tensor(whole, DensityMatrix(StateVector(SubsystemLayout{2}, {1.0, 0.0})));
    whole = DensityMatrix(SubsystemLayout{whole.layout().dim(0), whole.layout().dim(1), 2},
                          whole.matrix());
  }
  const DensityMatrix system_purifier = partial_trace(whole, {0, 2});
  const DensityMatrix system = partial_trace(rho, {0});
  return von_neumann_entropy(system) - entanglement_of_formation(system_purifier);
}

}  // namespace qdiscord
