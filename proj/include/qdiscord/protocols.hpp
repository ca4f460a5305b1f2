#pragma once

// Communication scenarios: measure-and-prepare (LOCC) relay to one
// recipient, state-dependent cloning to two recipients, and general
// broadcast isometries A -> R_1 ... R_n B.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "qdiscord/correlations.hpp"
#include "qdiscord/koashi_winter.hpp"
#include "qdiscord/linalg.hpp"
#include "qdiscord/states.hpp"

namespace qdiscord {

// ---------------------------------------------------------------------------
// Measure and prepare

/// Measures A with `measurement` and prepares `prepared[i]` on R for outcome i.
class PreparedEnsembleChannel {
 public:
  PreparedEnsembleChannel(Povm measurement, std::vector<DensityMatrix> prepared)
      : measurement_(std::move(measurement)), prepared_(std::move(prepared)) {
    if (prepared_.size() != measurement_.size()) {
      throw std::invalid_argument("PreparedEnsembleChannel: outcome/state count mismatch");
    }
    for (const auto& sigma : prepared_)
      if (sigma.dim() != prepared_.front().dim()) {
        throw std::invalid_argument("PreparedEnsembleChannel: prepared states differ in dimension");
      }
  }

  /// Pure, mutually orthogonal preparations |i><i| on an R of dimension |m|.
  static PreparedEnsembleChannel orthogonal_flags(Povm measurement) {
    const std::size_t n = measurement.size();
    std::vector<DensityMatrix> flags;
    for (std::size_t i = 0; i < n; ++i)
      flags.emplace_back(StateVector(SubsystemLayout{n}, basis_vector(n, i)));
    return PreparedEnsembleChannel(std::move(measurement), std::move(flags));
  }

  const Povm& measurement() const noexcept { return measurement_; }
  const std::vector<DensityMatrix>& prepared() const noexcept { return prepared_; }
  std::size_t recipient_dim() const noexcept { return prepared_.front().dim(); }

 private:
  Povm measurement_;
  std::vector<DensityMatrix> prepared_;
};

/// sum_i Tr_A[(1 (x) E_i) rho] (x) sigma_i on S (x) R.
inline DensityMatrix measure_and_prepare(const DensityMatrix& rho,
                                         const PreparedEnsembleChannel& channel) {
  detail::require_apparatus_match(rho, channel.measurement());
  const std::size_t ds = rho.layout().dim(0);
  const std::size_t da = rho.layout().dim(1);
  const std::size_t dr = channel.recipient_dim();
  Matrix out(ds * dr, ds * dr);
  for (std::size_t i = 0; i < channel.measurement().size(); ++i) {
    const Matrix conditioned =
        detail::apparatus_conditioned(rho.matrix(), ds, da, channel.measurement().elements()[i]);
    out += tensor(conditioned, channel.prepared()[i].matrix());
  }
  return DensityMatrix(SubsystemLayout{ds, dr}, std::move(out));
}

/// I(S:R) after relaying outcomes of `m` as orthogonal pure flags.
inline double locc_transfer_info(const DensityMatrix& rho, const Povm& m) {
  return mutual_information(measure_and_prepare(rho, PreparedEnsembleChannel::orthogonal_flags(m)));
}

// ---------------------------------------------------------------------------
// State-dependent cloning

struct ClonerOutput {
  StateVector alpha;  // output for input psi, on R1 (x) R2
  StateVector beta;   // output for input phi
  double global_fidelity;
};

/// Optimal two-copy cloner for the pair {psi, phi} with real overlap
/// s = <psi|phi> >= 0.
///
/// Outputs live in the real plane spanned by |psi psi> and |phi phi>
/// (overlap s^2, angle g = acos s^2). Unitarity fixes <alpha|beta> = s, an
/// angle e = acos s <= g, and fidelity is maximal when the pair sits
/// symmetrically about the bisector: each output is rotated (g - e)/2 away
/// from its target, giving F = cos^2((g - e)/2).
inline ClonerOutput optimal_state_dependent_cloner(const StateVector& psi, const StateVector& phi) {
  if (psi.dim() != 2 || phi.dim() != 2) {
    throw std::invalid_argument("optimal_state_dependent_cloner: inputs must be qubits");
  }
  const Complex overlap = inner(psi.amplitudes(), phi.amplitudes());
  if (std::abs(overlap.imag()) > 1e-10 || overlap.real() < -1e-10) {
    throw std::invalid_argument("optimal_state_dependent_cloner: overlap must be real and >= 0");
  }
  const double s = std::clamp(overlap.real(), 0.0, 1.0);
  const SubsystemLayout pair{2, 2};
  const Vector target_psi = tensor(psi.amplitudes(), psi.amplitudes());
  const Vector target_phi = tensor(phi.amplitudes(), phi.amplitudes());

  // e2 completes an orthonormal basis of the target plane.
  Vector e2 = target_phi;
  for (std::size_t k = 0; k < e2.size(); ++k) e2[k] -= s * s * target_psi[k];
  const double e2_norm = norm(e2);
  if (e2_norm < 1e-12) {
    return {StateVector(pair, target_psi), StateVector(pair, target_psi), 1.0};
  }
  for (auto& z : e2) z /= e2_norm;

  const double target_angle = std::acos(s * s);
  const double output_angle = std::acos(s);
  const double a = 0.5 * (target_angle - output_angle);
  const double b = 0.5 * (target_angle + output_angle);
  Vector alpha(4), beta(4);
  for (std::size_t k = 0; k < 4; ++k) {
    alpha[k] = std::cos(a) * target_psi[k] + std::sin(a) * e2[k];
    beta[k] = std::cos(b) * target_psi[k] + std::sin(b) * e2[k];
  }
  const double fidelity =
      0.5 * (std::norm(inner(alpha, target_psi)) + std::norm(inner(beta, target_phi)));
  return {StateVector::normalized(pair, std::move(alpha)),
          StateVector::normalized(pair, std::move(beta)), fidelity};
}

/// 1/2 |0><0| (x) |alpha><alpha| + 1/2 |1><1| (x) |beta><beta| on S R1 R2,
/// the cloner applied to the record states of example_state(theta).
inline DensityMatrix cloned_example_state(double theta) {
  const ExampleStateParams params(theta);
  const double t = params.theta();
  const SubsystemLayout qubit{2};
  const ClonerOutput clones = optimal_state_dependent_cloner(
      StateVector(qubit, record_state_psi(t)), StateVector(qubit, record_state_phi(t)));
  Matrix rho = tensor(projector(basis_vector(2, 0)), projector(clones.alpha.amplitudes())) * 0.5 +
               tensor(projector(basis_vector(2, 1)), projector(clones.beta.amplitudes())) * 0.5;
  return DensityMatrix(SubsystemLayout{2, 2, 2}, std::move(rho));
}

/// I(S:R1) of the cloned example state.
inline double cloning_recipient_info(double theta) {
  return mutual_information(partial_trace(cloned_example_state(theta), {0, 1}));
}

// ---------------------------------------------------------------------------
// LOCC vs cloning crossover

/// I^c(theta) - I_clone(theta); positive where LOCC does better.
inline double locc_cloning_gap(double theta, const CorrelationOptions& options = {}) {
  return classical_correlation(example_state(theta), options).classical_info -
         cloning_recipient_info(theta);
}

struct CrossoverOptions {
  double lower = 0.05 * std::numbers::pi;
  double upper = 0.15 * std::numbers::pi;
  double tolerance = 1e-6;  // radians, final bracket width
  CorrelationOptions correlation{};
};

struct CrossoverResult {
  double theta;      // bracket midpoint
  double below;      // certified point with gap > 0
  double above;      // certified point with gap < 0
  double gap_below;
  double gap_above;
  double residual;   // gap at theta
  int iterations;
  bool widened;
};

/// Bisection for the single sign change of locc_cloning_gap. When the
/// initial bracket shows no sign change it is widened once by a factor of two
/// about its centre (clipped to (0, pi/4]); failing that, throws.
inline CrossoverResult find_crossover(const CrossoverOptions& options = {}) {
  auto gap = [&](double t) { return locc_cloning_gap(t, options.correlation); };
  double lo = options.lower;
  double hi = options.upper;
  double g_lo = gap(lo);
  double g_hi = gap(hi);
  bool widened = false;
  if (!(g_lo > 0.0 && g_hi < 0.0)) {
    const double centre = 0.5 * (lo + hi);
    const double half = hi - lo;
    lo = std::max(centre - half, 1e-9);
    hi = std::min(centre + half, kMaxExampleAngle);
    g_lo = gap(lo);
    g_hi = gap(hi);
    widened = true;
    if (!(g_lo > 0.0 && g_hi < 0.0)) {
      throw std::runtime_error("find_crossover: no sign change in bracket");
    }
  }
  int iterations = 0;
  while (hi - lo > options.tolerance) {
    const double mid = 0.5 * (lo + hi);
    const double g_mid = gap(mid);
    if (g_mid > 0.0) {
      lo = mid;
      g_lo = g_mid;
    } else {
      hi = mid;
      g_hi = g_mid;
    }
    ++iterations;
  }
  const double theta = 0.5 * (lo + hi);
  return {theta, lo, hi, g_lo, g_hi, gap(theta), iterations, widened};
}

// ---------------------------------------------------------------------------
// Broadcast isometries

/// V : A -> R_1 (x) ... (x) R_n (x) B with V^dagger V = 1.
class BroadcastIsometry {
 public:
  BroadcastIsometry(Matrix map, std::vector<std::size_t> recipient_dims, std::size_t ancilla_dim)
      : map_(std::move(map)), recipient_dims_(std::move(recipient_dims)), ancilla_dim_(ancilla_dim) {
    if (recipient_dims_.empty() || ancilla_dim_ < 1) {
      throw std::invalid_argument("BroadcastIsometry: need recipients and an ancilla");
    }
    const std::size_t out = output_layout().total();
    if (map_.rows() != out || map_.cols() < 1 || map_.cols() > out) {
      throw std::invalid_argument("BroadcastIsometry: matrix shape does not match output dims");
    }
    if (max_abs_diff(map_.adjoint() * map_, Matrix::identity(map_.cols())) > kStateTolerance) {
      throw std::invalid_argument("BroadcastIsometry: V^dagger V is not the identity");
    }
  }

  static BroadcastIsometry random(std::size_t input_dim, std::vector<std::size_t> recipient_dims,
                                  std::size_t ancilla_dim, std::uint64_t seed) {
    std::size_t out = ancilla_dim;
    for (auto d : recipient_dims) out *= d;
    return BroadcastIsometry(random_isometry(input_dim, out, seed), std::move(recipient_dims),
                             ancilla_dim);
  }

  /// |i> -> |i>^{(x) n}, trivial ancilla.
  static BroadcastIsometry classical_copy(std::size_t input_dim, std::size_t recipients) {
    std::vector<std::size_t> dims(recipients, input_dim);
    std::size_t out = 1;
    for (auto d : dims) out *= d;
    Matrix v(out, input_dim);
    for (std::size_t i = 0; i < input_dim; ++i) {
      std::size_t row = 0;
      for (std::size_t r = 0; r < recipients; ++r) row = row * input_dim + i;
      v(row, i) = 1.0;
    }
    return BroadcastIsometry(std::move(v), std::move(dims), 1);
  }

  const Matrix& matrix() const noexcept { return map_; }
  std::size_t input_dim() const noexcept { return map_.cols(); }
  std::size_t recipients() const noexcept { return recipient_dims_.size(); }
  const std::vector<std::size_t>& recipient_dims() const noexcept { return recipient_dims_; }
  std::size_t ancilla_dim() const noexcept { return ancilla_dim_; }

  SubsystemLayout output_layout() const {
    auto dims = recipient_dims_;
    dims.push_back(ancilla_dim_);
    return SubsystemLayout(std::move(dims));
  }

 private:
  Matrix map_;
  std::vector<std::size_t> recipient_dims_;
  std::size_t ancilla_dim_;
};

/// (1_S (x) V) rho (1_S (x) V)^dagger with B traced out; layout S R_1 ... R_n.
inline DensityMatrix apply_broadcast(const DensityMatrix& rho, const BroadcastIsometry& v) {
  detail::require_bipartite(rho);
  if (rho.layout().dim(1) != v.input_dim()) {
    throw std::invalid_argument("apply_broadcast: isometry input does not match the apparatus");
  }
  const std::size_t ds = rho.layout().dim(0);
  const Matrix lifted = tensor(Matrix::identity(ds), v.matrix());
  std::vector<std::size_t> dims{ds};
  dims.insert(dims.end(), v.recipient_dims().begin(), v.recipient_dims().end());
  dims.push_back(v.ancilla_dim());
  const SubsystemLayout full(dims);

  Matrix out = lifted * rho.matrix() * lifted.adjoint();
  std::vector<std::size_t> keep(v.recipients() + 1);
  std::iota(keep.begin(), keep.end(), std::size_t{0});
  dims.pop_back();
  return DensityMatrix(SubsystemLayout(std::move(dims)), partial_trace(out, full, keep));
}

inline DensityMatrix apply_broadcast(const StateVector& psi, const BroadcastIsometry& v) {
  return apply_broadcast(DensityMatrix(psi), v);
}

/// I(S:R_i) of a broadcast output (recipient index i is zero-based).
inline double recipient_information(const DensityMatrix& broadcast_output, std::size_t recipient) {
  if (recipient + 1 >= broadcast_output.layout().count()) {
    throw std::invalid_argument("recipient_information: recipient index out of range");
  }
  return mutual_information(partial_trace(broadcast_output, {0, recipient + 1}));
}

inline double average_recipient_information(const DensityMatrix& broadcast_output) {
  const std::size_t n = broadcast_output.layout().count() - 1;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += recipient_information(broadcast_output, i);
  return sum / static_cast<double>(n);
}

/// (1/n) sum_i I(S:R_i) <= S(rho^S) + 1e-8 for a pure S (x) A input.
inline bool average_bound_check(const StateVector& psi, const BroadcastIsometry& v) {
  if (v.recipients() < 2) {
    throw std::invalid_argument("average_bound_check: need at least two recipients");
  }
  const DensityMatrix rho(psi);
  const double system_entropy = von_neumann_entropy(partial_trace(rho, {0}));
  return average_recipient_information(apply_broadcast(rho, v)) <= system_entropy + 1e-8;
}

/// Rejects mixed inputs: the average bound is only established for pure states.
inline bool average_bound_check(const DensityMatrix& rho, const BroadcastIsometry& v) {
  if (std::abs(rho.purity() - 1.0) > 1e-10) {
    throw std::invalid_argument("average_bound_check: input state is mixed");
  }
  const EigenSystem es = hermitian_eigensystem(rho.matrix());
  Vector top(rho.dim());
  for (std::size_t i = 0; i < rho.dim(); ++i) top[i] = es.vectors(i, 0);
  return average_bound_check(StateVector::normalized(rho.layout(), std::move(top)), v);
}

}  // namespace qdiscord
