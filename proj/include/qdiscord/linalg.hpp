#pragma once

// Dense complex linear algebra for small quantum systems (total dimension
// up to a few dozen). Matrices are row-major; no expression templates.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qdiscord {

using Complex = std::complex<double>;
using Vector = std::vector<Complex>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  /// Row-major nested initializer: Matrix{{1, 0}, {0, 1}}.
  Matrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) {
        throw std::invalid_argument("Matrix: ragged initializer");
      }
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static Matrix diagonal(std::span<const double> values) {
    Matrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) noexcept {
    return data_[r * cols_ + c];
  }
  const Complex& operator()(std::size_t r, std::size_t c) const noexcept {
    return data_[r * cols_ + c];
  }

  std::span<Complex> data() noexcept { return data_; }
  std::span<const Complex> data() const noexcept { return data_; }

  Matrix adjoint() const {
    Matrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
  }

  Matrix transpose() const {
    Matrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
    return out;
  }

  Matrix conjugate() const {
    Matrix out = *this;
    for (auto& z : out.data_) z = std::conj(z);
    return out;
  }

  Complex trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  Matrix& operator+=(const Matrix& other) {
    check_same_shape(other);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& other) {
    check_same_shape(other);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
  }
  Matrix& operator*=(Complex scale) noexcept {
    for (auto& z : data_) z *= scale;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, Complex s) { return a *= s; }
  friend Matrix operator*(Complex s, Matrix a) { return a *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) {
      throw std::invalid_argument("Matrix product: inner dimensions differ");
    }
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex{}) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    }
    return out;
  }

  friend Vector operator*(const Matrix& a, const Vector& v) {
    if (a.cols_ != v.size()) {
      throw std::invalid_argument("Matrix-vector product: dimensions differ");
    }
    Vector out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) out[i] += a(i, k) * v[k];
    return out;
  }

 private:
  void check_same_shape(const Matrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
      throw std::invalid_argument("Matrix: shape mismatch");
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

inline Complex inner(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("inner: size mismatch");
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

inline double norm(const Vector& v) { return std::sqrt(std::real(inner(v, v))); }

/// |a><b|
inline Matrix outer(const Vector& a, const Vector& b) {
  Matrix m(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) m(i, j) = a[i] * std::conj(b[j]);
  return m;
}

inline Matrix projector(const Vector& v) { return outer(v, v); }

/// Kronecker product a ⊗ b.
inline Matrix tensor(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

inline Vector tensor(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) out[i * b.size() + k] = a[i] * b[k];
  return out;
}

inline Vector basis_vector(std::size_t dim, std::size_t index) {
  Vector v(dim);
  v.at(index) = 1.0;
  return v;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
  return worst;
}

inline double hermiticity_defect(const Matrix& m) {
  if (!m.is_square()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j)
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
  return worst;
}

inline double frobenius_norm(const Matrix& m) {
  double s = 0.0;
  for (const auto& z : m.data()) s += std::norm(z);
  return std::sqrt(s);
}

constexpr double kHermitianTolerance = 1e-10;

struct EigenSystem {
  std::vector<double> values;  // descending
  Matrix vectors;              // column k pairs with values[k]
};

/// Cyclic Jacobi eigensolver for Hermitian matrices.
///
/// Each rotation combines a diagonal phase with a real Givens rotation so the
/// (p, q) pivot becomes real before it is annihilated. Sweeps stop once the
/// off-diagonal Frobenius norm drops below 1e-12 (scaled by ||M||_F when that
/// exceeds one) or after 100 sweeps.
inline EigenSystem hermitian_eigensystem(const Matrix& input) {
  if (hermiticity_defect(input) > kHermitianTolerance) {
    throw std::invalid_argument("hermitian_eigensystem: matrix is not Hermitian");
  }
  constexpr double kOffDiagonalTolerance = 1e-12;
  constexpr int kMaxSweeps = 100;

  const std::size_t n = input.rows();
  Matrix a = input;
  for (std::size_t i = 0; i < n; ++i) a(i, i) = std::real(a(i, i));
  Matrix v = Matrix::identity(n);
  const double threshold =
      kOffDiagonalTolerance * std::max(1.0, frobenius_norm(input));

  auto off_diagonal_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
  };

  for (int sweep = 0; sweep < kMaxSweeps && off_diagonal_norm() > threshold; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double g = std::abs(apq);
        if (g < 1e-300) continue;
        const Complex phase = apq / g;  // e^{i phi}
        const double app = std::real(a(p, p));
        const double aqq = std::real(a(q, q));
        const double tau = (aqq - app) / (2.0 * g);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex phase_conj = std::conj(phase);

        // A <- A U with U = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] on (p, q).
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = c * akp - s * phase_conj * akq;
          a(k, q) = s * akp + c * phase_conj * akq;
        }
        // A <- U^dagger A
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = c * apk - s * phase * aqk;
          a(q, k) = s * apk + c * phase * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = c * vkp - s * phase_conj * vkq;
          v(k, q) = s * vkp + c * phase_conj * vkq;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = std::real(a(p, p));
        a(q, q) = std::real(a(q, q));
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return std::real(a(i, i)) > std::real(a(j, j));
  });

  EigenSystem out{std::vector<double>(n), Matrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = std::real(a(order[k], order[k]));
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
  }
  return out;
}

inline std::vector<double> hermitian_eigenvalues(const Matrix& m) {
  return hermitian_eigensystem(m).values;
}

/// Applies f to the spectrum of a Hermitian matrix: V f(D) V^dagger.
template <typename F>
Matrix hermitian_function(const Matrix& m, F&& f) {
  const EigenSystem es = hermitian_eigensystem(m);
  const std::size_t n = m.rows();
  Matrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double fk = f(es.values[k]);
    if (fk == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex vik = es.vectors(i, k) * fk;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * std::conj(es.vectors(j, k));
    }
  }
  return out;
}

inline Matrix psd_sqrt(const Matrix& m) {
  return hermitian_function(m, [](double x) { return std::sqrt(std::max(0.0, x)); });
}

/// Eigenvalues at or below this are treated as exact zeros in entropies.
constexpr double kEntropyClip = 1e-12;

/// Shannon entropy in bits of a spectrum; entries <= kEntropyClip count as 0.
inline double spectral_entropy(std::span<const double> spectrum) {
  double h = 0.0;
  for (double x : spectrum)
    if (x > kEntropyClip) h -= x * std::log2(x);
  return h;
}

inline double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("binary_entropy: probability outside [0, 1]");
  }
  auto term = [](double x) { return x > 0.0 ? -x * std::log2(x) : 0.0; };
  return term(p) + term(1.0 - p);
}

/// Entropy (bits) of a raw Hermitian PSD matrix, no invariant checks.
inline double matrix_entropy(const Matrix& m) {
  const auto spectrum = hermitian_eigenvalues(m);
  return spectral_entropy(spectrum);
}

}  // namespace qdiscord
