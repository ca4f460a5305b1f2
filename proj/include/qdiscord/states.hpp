#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdiscord/linalg.hpp"

namespace qdiscord {

/// Ordered tensor factorization of a Hilbert space.
class SubsystemLayout {
 public:
  SubsystemLayout() = default;
  SubsystemLayout(std::initializer_list<std::size_t> dims)
      : SubsystemLayout(std::vector<std::size_t>(dims)) {}
  explicit SubsystemLayout(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) throw std::invalid_argument("SubsystemLayout: no subsystems");
    for (auto d : dims_)
      if (d < 1) throw std::invalid_argument("SubsystemLayout: dimension must be >= 1");
  }

  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  std::size_t count() const noexcept { return dims_.size(); }
  std::size_t dim(std::size_t i) const { return dims_.at(i); }
  std::size_t total() const noexcept {
    return std::accumulate(dims_.begin(), dims_.end(), std::size_t{1},
                           std::multiplies<>());
  }

  SubsystemLayout with_appended(std::size_t d) const {
    auto dims = dims_;
    dims.push_back(d);
    return SubsystemLayout(std::move(dims));
  }

  friend bool operator==(const SubsystemLayout&, const SubsystemLayout&) = default;

 private:
  std::vector<std::size_t> dims_;
};

constexpr double kStateTolerance = 1e-10;

/// Normalized pure state over a layout.
class StateVector {
 public:
  StateVector(SubsystemLayout layout, Vector amplitudes)
      : layout_(std::move(layout)), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != layout_.total()) {
      throw std::invalid_argument("StateVector: amplitude count does not match layout");
    }
    if (std::abs(qdiscord::norm(amplitudes_) - 1.0) > kStateTolerance) {
      throw std::invalid_argument("StateVector: not normalized");
    }
  }

  /// Rescales to unit norm before validating.
  static StateVector normalized(SubsystemLayout layout, Vector amplitudes) {
    const double n = qdiscord::norm(amplitudes);
    if (!(n > 0.0)) throw std::invalid_argument("StateVector: zero vector");
    for (auto& a : amplitudes) a /= n;
    return StateVector(std::move(layout), std::move(amplitudes));
  }

  const SubsystemLayout& layout() const noexcept { return layout_; }
  const Vector& amplitudes() const noexcept { return amplitudes_; }
  std::size_t dim() const noexcept { return amplitudes_.size(); }

 private:
  SubsystemLayout layout_;
  Vector amplitudes_;
};

inline StateVector tensor(const StateVector& a, const StateVector& b) {
  auto dims = a.layout().dims();
  dims.insert(dims.end(), b.layout().dims().begin(), b.layout().dims().end());
  return StateVector(SubsystemLayout(std::move(dims)), tensor(a.amplitudes(), b.amplitudes()));
}

/// Hermitian, unit-trace, positive semidefinite operator over a layout.
class DensityMatrix {
 public:
  DensityMatrix(SubsystemLayout layout, Matrix entries)
      : layout_(std::move(layout)), entries_(std::move(entries)) {
    if (entries_.rows() != layout_.total() || !entries_.is_square()) {
      throw std::invalid_argument("DensityMatrix: shape does not match layout");
    }
    if (hermiticity_defect(entries_) > kStateTolerance) {
      throw std::invalid_argument("DensityMatrix: not Hermitian");
    }
    if (std::abs(entries_.trace() - Complex{1.0}) > kStateTolerance) {
      throw std::invalid_argument("DensityMatrix: trace is not 1");
    }
    if (hermitian_eigenvalues(entries_).back() < -kStateTolerance) {
      throw std::invalid_argument("DensityMatrix: not positive semidefinite");
    }
  }

  explicit DensityMatrix(const StateVector& psi)
      : DensityMatrix(psi.layout(), projector(psi.amplitudes())) {}

  const SubsystemLayout& layout() const noexcept { return layout_; }
  const Matrix& matrix() const noexcept { return entries_; }
  std::size_t dim() const noexcept { return entries_.rows(); }

  double purity() const { return std::real((entries_ * entries_).trace()); }

 private:
  SubsystemLayout layout_;
  Matrix entries_;
};

inline DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  auto dims = a.layout().dims();
  dims.insert(dims.end(), b.layout().dims().begin(), b.layout().dims().end());
  return DensityMatrix(SubsystemLayout(std::move(dims)), tensor(a.matrix(), b.matrix()));
}

namespace detail {

/// Mixed-radix digits of a flat index, most significant subsystem first.
inline void unravel(std::size_t index, std::span<const std::size_t> dims,
                    std::span<std::size_t> digits) {
  for (std::size_t k = dims.size(); k-- > 0;) {
    digits[k] = index % dims[k];
    index /= dims[k];
  }
}

inline std::size_t ravel(std::span<const std::size_t> digits,
                         std::span<const std::size_t> dims) {
  std::size_t index = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) index = index * dims[k] + digits[k];
  return index;
}

inline std::vector<bool> keep_mask(std::span<const std::size_t> keep, std::size_t count) {
  if (keep.empty()) throw std::invalid_argument("partial_trace: empty keep set");
  std::vector<bool> mask(count, false);
  for (auto k : keep) {
    if (k >= count) throw std::invalid_argument("partial_trace: subsystem index out of range");
    mask[k] = true;
  }
  return mask;
}

}  // namespace detail

/// Traces out every subsystem not listed in `keep`. Kept factors stay in
/// their original order regardless of the order of `keep`.
inline Matrix partial_trace(const Matrix& m, const SubsystemLayout& layout,
                            std::span<const std::size_t> keep) {
  const auto& dims = layout.dims();
  const auto mask = detail::keep_mask(keep, dims.size());
  std::vector<std::size_t> kept_dims;
  for (std::size_t k = 0; k < dims.size(); ++k)
    if (mask[k]) kept_dims.push_back(dims[k]);
  const std::size_t kept_total = std::accumulate(
      kept_dims.begin(), kept_dims.end(), std::size_t{1}, std::multiplies<>());

  const std::size_t n = layout.total();
  std::vector<std::size_t> row(dims.size()), col(dims.size());
  std::vector<std::size_t> row_kept, col_kept;
  Matrix out(kept_total, kept_total);
  for (std::size_t r = 0; r < n; ++r) {
    detail::unravel(r, dims, row);
    for (std::size_t c = 0; c < n; ++c) {
      detail::unravel(c, dims, col);
      bool traced_equal = true;
      for (std::size_t k = 0; k < dims.size() && traced_equal; ++k)
        if (!mask[k] && row[k] != col[k]) traced_equal = false;
      if (!traced_equal) continue;
      row_kept.clear();
      col_kept.clear();
      for (std::size_t k = 0; k < dims.size(); ++k)
        if (mask[k]) {
          row_kept.push_back(row[k]);
          col_kept.push_back(col[k]);
        }
      out(detail::ravel(row_kept, kept_dims), detail::ravel(col_kept, kept_dims)) += m(r, c);
    }
  }
  return out;
}

inline DensityMatrix partial_trace(const DensityMatrix& rho,
                                   std::span<const std::size_t> keep) {
  const auto mask = detail::keep_mask(keep, rho.layout().count());
  std::vector<std::size_t> kept_dims;
  for (std::size_t k = 0; k < mask.size(); ++k)
    if (mask[k]) kept_dims.push_back(rho.layout().dim(k));
  return DensityMatrix(SubsystemLayout(std::move(kept_dims)),
                       partial_trace(rho.matrix(), rho.layout(), keep));
}

inline DensityMatrix partial_trace(const DensityMatrix& rho,
                                   std::initializer_list<std::size_t> keep) {
  return partial_trace(rho, std::span<const std::size_t>(keep.begin(), keep.size()));
}

/// Transposes the indices of one subsystem.
inline Matrix partial_transpose(const Matrix& m, const SubsystemLayout& layout,
                                std::size_t which) {
  const auto& dims = layout.dims();
  if (which >= dims.size()) throw std::invalid_argument("partial_transpose: index out of range");
  const std::size_t n = layout.total();
  std::vector<std::size_t> row(dims.size()), col(dims.size());
  Matrix out(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      detail::unravel(r, dims, row);
      detail::unravel(c, dims, col);
      std::swap(row[which], col[which]);
      out(detail::ravel(row, dims), detail::ravel(col, dims)) = m(r, c);
    }
  }
  return out;
}

inline double von_neumann_entropy(const DensityMatrix& rho) {
  return matrix_entropy(rho.matrix());
}

/// Purification |Psi> = sum_k sqrt(lambda_k) |e_k>|k> over the support of rho,
/// ancilla basis ordered by descending eigenvalue. The ancilla is appended as
/// the last subsystem and has dimension rank(rho) (eigenvalues > 1e-12).
inline StateVector purify(const DensityMatrix& rho) {
  const EigenSystem es = hermitian_eigensystem(rho.matrix());
  std::size_t rank = 0;
  while (rank < es.values.size() && es.values[rank] > kEntropyClip) ++rank;
  rank = std::max<std::size_t>(rank, 1);

  const std::size_t n = rho.dim();
  Vector psi(n * rank);
  for (std::size_t k = 0; k < rank; ++k) {
    const double weight = std::sqrt(std::max(0.0, es.values[k]));
    for (std::size_t i = 0; i < n; ++i) psi[i * rank + k] = weight * es.vectors(i, k);
  }
  return StateVector::normalized(rho.layout().with_appended(rank), std::move(psi));
}

// ---------------------------------------------------------------------------
// Seeded sampling. Identical seeds give bit-identical results on a given
// standard library implementation.

namespace detail {

inline Matrix gaussian_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(rows, cols);
  for (auto& z : g.data()) {
    const double re = normal(engine);
    const double im = normal(engine);
    z = Complex(re, im);
  }
  return g;
}

}  // namespace detail

/// Haar-random isometry C^{d_in} -> C^{d_out} (d_out x d_in matrix) from
/// modified Gram-Schmidt on the columns of a complex Gaussian matrix.
inline Matrix random_isometry(std::size_t d_in, std::size_t d_out, std::uint64_t seed) {
  if (d_in == 0 || d_in > d_out) {
    throw std::invalid_argument("random_isometry: need 1 <= d_in <= d_out");
  }
  Matrix q = detail::gaussian_matrix(d_out, d_in, seed);
  // Two orthogonalization passes keep V^dagger V = 1 at machine precision.
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t j = 0; j < d_in; ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        Complex proj = 0.0;
        for (std::size_t r = 0; r < d_out; ++r) proj += std::conj(q(r, i)) * q(r, j);
        for (std::size_t r = 0; r < d_out; ++r) q(r, j) -= proj * q(r, i);
      }
      double nrm = 0.0;
      for (std::size_t r = 0; r < d_out; ++r) nrm += std::norm(q(r, j));
      nrm = std::sqrt(nrm);
      for (std::size_t r = 0; r < d_out; ++r) q(r, j) /= nrm;
    }
  }
  return q;
}

inline Matrix random_unitary(std::size_t d, std::uint64_t seed) {
  return random_isometry(d, d, seed);
}

inline StateVector random_pure_state(const SubsystemLayout& layout, std::uint64_t seed) {
  Matrix g = detail::gaussian_matrix(layout.total(), 1, seed);
  return StateVector::normalized(layout, Vector(g.data().begin(), g.data().end()));
}

inline StateVector random_pure_state(std::size_t dim, std::uint64_t seed) {
  return random_pure_state(SubsystemLayout{dim}, seed);
}

/// Mixed state from tracing out a random pure state's ancilla of the given
/// dimension (Hilbert-Schmidt measure when ancilla_dim equals the system dim).
inline DensityMatrix random_density_matrix(const SubsystemLayout& layout,
                                           std::size_t ancilla_dim, std::uint64_t seed) {
  const StateVector big = random_pure_state(layout.with_appended(ancilla_dim), seed);
  const Vector& psi = big.amplitudes();
  const std::size_t d = layout.total();
  Matrix rho(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      Complex sum = 0.0;
      for (std::size_t k = 0; k < ancilla_dim; ++k)
        sum += psi[i * ancilla_dim + k] * std::conj(psi[j * ancilla_dim + k]);
      rho(i, j) = sum;
      rho(j, i) = std::conj(sum);
    }
    rho(i, i) = std::real(rho(i, i));
  }
  return DensityMatrix(layout, std::move(rho));
}

}  // namespace qdiscord
