#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

namespace stablecurv {

/// Dense row-major rectangular matrix. Used for non-symmetric products such
/// as R⁻¹R^{∘2}.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * cols_ + j];
  }
  double& operator()(std::size_t i, std::size_t j) noexcept {
    return data_[i * cols_ + j];
  }

  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<double> row(std::size_t i) noexcept {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<const double> data() const noexcept { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Dense real symmetric matrix; immutable once built. Every constructor
/// guarantees entries(i,j) == entries(j,i) bit for bit.
class SymMatrix {
 public:
  /// Fills the upper triangle from `entry(i, j)` (i ≤ j) and mirrors it.
  static SymMatrix generate(std::size_t n,
                            const std::function<double(std::size_t, std::size_t)>& entry);
  /// Symmetrizes a row-major n×n array as ½(A + Aᵀ).
  static SymMatrix from_rows(std::size_t n, std::span<const double> rows);
  static SymMatrix from_rows(std::size_t n, std::initializer_list<double> rows);
  static SymMatrix symmetrize(const Matrix& a);
  static SymMatrix identity(std::size_t n);
  static SymMatrix zeros(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * n_ + j];
  }
  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * n_, n_};
  }
  std::span<const double> data() const noexcept { return data_; }

  double max_abs() const noexcept;
  double max_diagonal() const noexcept;
  Matrix to_dense() const;

 private:
  SymMatrix(std::size_t n, std::vector<double> data);

  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// Cholesky factor: strictly-upper entries are zero, diagonal is positive.
class LowerTriangular {
 public:
  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * n_ + j];
  }

  /// In place: b ← L⁻¹ b.
  void solve_lower(std::span<double> b) const noexcept;
  /// In place: b ← L⁻ᵀ b.
  void solve_upper_transposed(std::span<double> b) const noexcept;
  /// Returns L⁻¹ X, treating each column of `x` as a right-hand side.
  Matrix solve_lower(const Matrix& x) const;
  /// L Lᵀ.
  SymMatrix reconstruct() const;
  /// True when every entry is ≥ −tol.
  bool nonnegative(double tol = 0.0) const noexcept;

 private:
  friend LowerTriangular cholesky(const SymMatrix&);
  LowerTriangular(std::size_t n, std::vector<double> data)
      : n_(n), data_(std::move(data)) {}

  std::size_t n_;
  std::vector<double> data_;
};

/// Integer matrix R_{1/2}⁻¹ R_{1/2}^{∘2}. Upper triangular, diagonal
/// 1,3,…,2N−1, constant −2 above the diagonal.
class ExactCurvatureMatrix {
 public:
  static constexpr std::size_t kMaxDimension = 1'000'000;

  std::size_t size() const noexcept { return n_; }
  std::int64_t operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * n_ + j];
  }

 private:
  friend ExactCurvatureMatrix build_M_exact(std::size_t);
  ExactCurvatureMatrix(std::size_t n, std::vector<std::int64_t> data)
      : n_(n), data_(std::move(data)) {}

  std::size_t n_;
  std::vector<std::int64_t> data_;
};

/// Pivots at or below this fraction of the largest diagonal entry abort the
/// factorization.
inline constexpr double kCholeskyRelativePivot = 1e-12;

/// fBM covariance matrix [R_H(n,m)]_{n,m=1..N}. Exactly min(n,m) at H = ½.
SymMatrix build_R(double hurst, std::size_t n);

/// Entrywise k-th power.
SymMatrix hadamard_power(const SymMatrix& a, unsigned k);

/// Throws NotPositiveDefinite.
LowerTriangular cholesky(const SymMatrix& a);

double log_det(const SymMatrix& a);

ExactCurvatureMatrix build_M_exact(std::size_t n);

/// A⁻¹B via the Cholesky factor of A (A positive definite).
Matrix inverse_times(const SymMatrix& a, const SymMatrix& b);

Matrix multiply(const Matrix& a, const Matrix& b);

/// Largest entry off the main diagonal (−∞ for 1×1).
double max_offdiagonal(const Matrix& m) noexcept;

/// One row per line, comma separated, 17 significant digits.
void write_csv(std::ostream& out, const Matrix& m);
void write_csv(std::ostream& out, const SymMatrix& m);

}  // namespace stablecurv
