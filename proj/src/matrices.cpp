#include "stablecurv/matrices.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

#include "stablecurv/errors.hpp"
#include "stablecurv/format.hpp"
#include "stablecurv/kernels.hpp"

namespace stablecurv {

SymMatrix::SymMatrix(std::size_t n, std::vector<double> data)
    : n_(n), data_(std::move(data)) {}

SymMatrix SymMatrix::generate(
    std::size_t n, const std::function<double(std::size_t, std::size_t)>& entry) {
  std::vector<double> d(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double v = entry(i, j);
      d[i * n + j] = v;
      d[j * n + i] = v;
    }
  }
  return SymMatrix(n, std::move(d));
}

SymMatrix SymMatrix::from_rows(std::size_t n, std::span<const double> rows) {
  if (rows.size() != n * n) {
    throw std::invalid_argument("expected " + std::to_string(n * n) +
                                " entries, got " + std::to_string(rows.size()));
  }
  return generate(n, [&](std::size_t i, std::size_t j) {
    return i == j ? rows[i * n + i] : 0.5 * (rows[i * n + j] + rows[j * n + i]);
  });
}

SymMatrix SymMatrix::from_rows(std::size_t n, std::initializer_list<double> rows) {
  return from_rows(n, std::span<const double>(rows.begin(), rows.size()));
}

SymMatrix SymMatrix::symmetrize(const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("matrix is not square");
  return from_rows(a.rows(), a.data());
}

SymMatrix SymMatrix::identity(std::size_t n) {
  return generate(n, [](std::size_t i, std::size_t j) { return i == j ? 1.0 : 0.0; });
}

SymMatrix SymMatrix::zeros(std::size_t n) {
  return SymMatrix(n, std::vector<double>(n * n, 0.0));
}

double SymMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::fabs(v));
  return m;
}

double SymMatrix::max_diagonal() const noexcept {
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n_; ++i) m = std::max(m, data_[i * n_ + i]);
  return m;
}

Matrix SymMatrix::to_dense() const {
  Matrix m(n_, n_);
  std::copy(data_.begin(), data_.end(), m.row(0).data());
  return m;
}

void LowerTriangular::solve_lower(std::span<double> b) const noexcept {
  for (std::size_t i = 0; i < n_; ++i) {
    const double* li = data_.data() + i * n_;
    double s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= li[k] * b[k];
    b[i] = s / li[i];
  }
}

void LowerTriangular::solve_upper_transposed(std::span<double> b) const noexcept {
  for (std::size_t i = n_; i-- > 0;) {
    double s = b[i];
    for (std::size_t k = i + 1; k < n_; ++k) s -= data_[k * n_ + i] * b[k];
    b[i] = s / data_[i * n_ + i];
  }
}

Matrix LowerTriangular::solve_lower(const Matrix& x) const {
  if (x.rows() != n_) throw std::invalid_argument("dimension mismatch in solve");
  // Row-oriented forward substitution: row i of the result is
  // (x_i − Σ_{k<i} L_ik y_k) / L_ii.
  Matrix y = x;
  const std::size_t c = x.cols();
  for (std::size_t i = 0; i < n_; ++i) {
    auto yi = y.row(i);
    const double* li = data_.data() + i * n_;
    for (std::size_t k = 0; k < i; ++k) {
      const double lik = li[k];
      if (lik == 0.0) continue;
      auto yk = y.row(k);
      for (std::size_t j = 0; j < c; ++j) yi[j] -= lik * yk[j];
    }
    const double inv = 1.0 / li[i];
    for (std::size_t j = 0; j < c; ++j) yi[j] *= inv;
  }
  return y;
}

SymMatrix LowerTriangular::reconstruct() const {
  return SymMatrix::generate(n_, [&](std::size_t i, std::size_t j) {
    double s = 0.0;
    const std::size_t kmax = std::min(i, j);
    for (std::size_t k = 0; k <= kmax; ++k) s += data_[i * n_ + k] * data_[j * n_ + k];
    return s;
  });
}

bool LowerTriangular::nonnegative(double tol) const noexcept {
  return std::all_of(data_.begin(), data_.end(), [tol](double v) { return v >= -tol; });
}

SymMatrix build_R(double hurst, std::size_t n) {
  if (!(hurst > 0.0 && hurst < 1.0)) {
    throw std::domain_error("Hurst exponent must lie in (0,1), got " +
                            std::to_string(hurst));
  }
  if (n == 0) throw std::invalid_argument("matrix dimension must be positive");
  if (hurst == 0.5) {
    return SymMatrix::generate(n, [](std::size_t i, std::size_t j) {
      return static_cast<double>(std::min(i, j) + 1);
    });
  }
  // Powers are shared by every entry, so tabulate k^{2H} once.
  std::vector<double> pw(n + 1);
  for (std::size_t k = 0; k <= n; ++k) pw[k] = abs_pow(static_cast<double>(k), 2.0 * hurst);
  return SymMatrix::generate(n, [&](std::size_t i, std::size_t j) {
    return 0.5 * (pw[i + 1] + pw[j + 1] - pw[j - i]);
  });
}

SymMatrix hadamard_power(const SymMatrix& a, unsigned k) {
  if (k == 0) throw std::invalid_argument("Hadamard exponent must be positive");
  return SymMatrix::generate(a.size(), [&](std::size_t i, std::size_t j) {
    const double x = a(i, j);
    double r = x;
    for (unsigned p = 1; p < k; ++p) r *= x;
    return r;
  });
}

LowerTriangular cholesky(const SymMatrix& a) {
  const std::size_t n = a.size();
  const double threshold = kCholeskyRelativePivot * std::max(a.max_diagonal(), 0.0);
  std::vector<double> l(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const double* lj = l.data() + j * n;
    double d = a(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= lj[k] * lj[k];
    if (!(d > threshold)) throw NotPositiveDefinite(j, d);
    const double ljj = std::sqrt(d);
    l[j * n + j] = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      const double* li = l.data() + i * n;
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= li[k] * lj[k];
      l[i * n + j] = s / ljj;
    }
  }
  return LowerTriangular(n, std::move(l));
}

double log_det(const SymMatrix& a) {
  const LowerTriangular l = cholesky(a);
  double s = 0.0;
  for (std::size_t i = 0; i < l.size(); ++i) s += std::log(l(i, i));
  return 2.0 * s;
}

ExactCurvatureMatrix build_M_exact(std::size_t n) {
  if (n == 0) throw std::invalid_argument("matrix dimension must be positive");
  if (n > ExactCurvatureMatrix::kMaxDimension) {
    throw std::invalid_argument("exact curvature matrix capped at 10^6");
  }
  // R_{1/2}⁻¹ is the path-graph Laplacian with a free last node:
  // tridiag(−1, 2, −1) except for a 1 in the bottom-right corner.
  // Row k of R⁻¹ S, with S(i,j) = min(i,j)², is −S(k−1,·) + d_k S(k,·) − S(k+1,·).
  auto sq = [](std::int64_t i, std::int64_t j) {
    const std::int64_t m = std::min(i, j);
    return m * m;
  };
  std::vector<std::int64_t> d(n * n);
  const auto nn = static_cast<std::int64_t>(n);
  for (std::int64_t k = 1; k <= nn; ++k) {
    const std::int64_t diag = (k == nn) ? 1 : 2;
    for (std::int64_t j = 1; j <= nn; ++j) {
      std::int64_t v = diag * sq(k, j);
      if (k > 1) v -= sq(k - 1, j);
      if (k < nn) v -= sq(k + 1, j);
      d[static_cast<std::size_t>((k - 1) * nn + (j - 1))] = v;
    }
  }
  return ExactCurvatureMatrix(n, std::move(d));
}

Matrix inverse_times(const SymMatrix& a, const SymMatrix& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
  const LowerTriangular l = cholesky(a);
  const std::size_t n = a.size();
  // X = L⁻ᵀ (L⁻¹ B), column by column.
  Matrix y = l.solve_lower(b.to_dense());
  std::vector<double> col(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) col[i] = y(i, j);
    l.solve_upper_transposed(col);
    for (std::size_t i = 0; i < n; ++i) y(i, j) = col[i];
  }
  return y;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("dimension mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto ci = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      auto bk = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) ci[j] += aik * bk[j];
    }
  }
  return c;
}

double max_offdiagonal(const Matrix& m) noexcept {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (i != j) best = std::max(best, m(i, j));
    }
  }
  return best;
}

namespace {

template <class M>
void write_rows(std::ostream& out, const M& m, std::size_t rows, std::size_t cols) {
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (j) out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
}

}  // namespace

void write_csv(std::ostream& out, const Matrix& m) { write_rows(out, m, m.rows(), m.cols()); }

void write_csv(std::ostream& out, const SymMatrix& m) {
  write_rows(out, m, m.size(), m.size());
}

}  // namespace stablecurv
