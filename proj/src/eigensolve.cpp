#include "stablecurv/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "stablecurv/errors.hpp"

namespace stablecurv {

namespace {

constexpr double kEps = 0x1p-52;

// Reduces the symmetric matrix held in `v` to tridiagonal form. On return
// `d` is the diagonal, `e` the subdiagonal (e[0] unused), and, when
// `accumulate` is set, `v` holds the orthogonal transformation.
void tridiagonalize(Matrix& v, std::vector<double>& d, std::vector<double>& e,
                    bool accumulate) {
  const std::size_t n = v.rows();
  for (std::size_t j = 0; j < n; ++j) d[j] = v(n - 1, j);

  for (std::size_t i = n - 1; i > 0; --i) {
    double scale = 0.0;
    double h = 0.0;
    for (std::size_t k = 0; k < i; ++k) scale += std::fabs(d[k]);
    if (scale == 0.0) {
      e[i] = d[i - 1];
      for (std::size_t j = 0; j < i; ++j) {
        d[j] = v(i - 1, j);
        v(i, j) = 0.0;
        v(j, i) = 0.0;
      }
    } else {
      for (std::size_t k = 0; k < i; ++k) {
        d[k] /= scale;
        h += d[k] * d[k];
      }
      double f = d[i - 1];
      double g = std::sqrt(h);
      if (f > 0) g = -g;
      e[i] = scale * g;
      h -= f * g;
      d[i - 1] = f - g;
      for (std::size_t j = 0; j < i; ++j) e[j] = 0.0;

      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        v(j, i) = f;
        g = e[j] + v(j, j) * f;
        for (std::size_t k = j + 1; k <= i - 1; ++k) {
          g += v(k, j) * d[k];
          e[k] += v(k, j) * f;
        }
        e[j] = g;
      }
      f = 0.0;
      for (std::size_t j = 0; j < i; ++j) {
        e[j] /= h;
        f += e[j] * d[j];
      }
      const double hh = f / (h + h);
      for (std::size_t j = 0; j < i; ++j) e[j] -= hh * d[j];
      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        g = e[j];
        for (std::size_t k = j; k <= i - 1; ++k) v(k, j) -= (f * e[k] + g * d[k]);
        d[j] = v(i - 1, j);
        v(i, j) = 0.0;
      }
    }
    d[i] = h;
  }

  for (std::size_t i = 0; i + 1 < n; ++i) {
    v(n - 1, i) = v(i, i);
    if (!accumulate) continue;
    {
      v(i, i) = 1.0;
      const double h = d[i + 1];
      if (h != 0.0) {
        for (std::size_t k = 0; k <= i; ++k) d[k] = v(k, i + 1) / h;
        for (std::size_t j = 0; j <= i; ++j) {
          double g = 0.0;
          for (std::size_t k = 0; k <= i; ++k) g += v(k, i + 1) * v(k, j);
          for (std::size_t k = 0; k <= i; ++k) v(k, j) -= g * d[k];
        }
      }
      for (std::size_t k = 0; k <= i; ++k) v(k, i + 1) = 0.0;
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    d[j] = v(n - 1, j);
    v(n - 1, j) = 0.0;
  }
  v(n - 1, n - 1) = 1.0;
  e[0] = 0.0;
}

// Implicit-shift QL on the tridiagonal (d, e); rotations are applied to the
// columns of `v` when `accumulate` is set.
void ql_implicit(Matrix& v, std::vector<double>& d, std::vector<double>& e,
                 bool accumulate) {
  const std::size_t n = d.size();
  const std::size_t max_iter = 50 * n;
  std::size_t iter = 0;
  for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;

  double f = 0.0;
  double tst1 = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::fabs(d[l]) + std::fabs(e[l]));
    std::size_t m = l;
    while (m < n) {
      if (std::fabs(e[m]) <= kEps * tst1) break;
      ++m;
    }
    if (m > l) {
      do {
        if (++iter > max_iter) throw ConvergenceFailure(iter - 1);
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
        f += h;

        p = d[m];
        double c = 1.0;
        double c2 = c;
        double c3 = c;
        const double el1 = e[l + 1];
        double s = 0.0;
        double s2 = 0.0;
        for (std::size_t i = m; i-- > l;) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[i];
          h = c * p;
          r = std::hypot(p, e[i]);
          e[i + 1] = s * r;
          s = e[i] / r;
          c = p / r;
          p = c * d[i] - s * g;
          d[i + 1] = h + s * (c * g + s * d[i]);
          if (accumulate) {
            for (std::size_t k = 0; k < n; ++k) {
              const double vk1 = v(k, i + 1);
              v(k, i + 1) = s * v(k, i) + c * vk1;
              v(k, i) = c * v(k, i) - s * vk1;
            }
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::fabs(e[l]) > kEps * tst1);
    }
    d[l] += f;
    e[l] = 0.0;
  }
}

// Stable ascending sort of values, carrying the matching columns of `v`.
Spectrum package(const std::vector<double>& d, const Matrix* v) {
  const std::size_t n = d.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
  Spectrum s;
  s.retained_dim = n;
  s.values.reserve(n);
  for (std::size_t k : order) s.values.push_back(d[k]);
  if (v != nullptr) {
    s.vectors.reserve(n);
    for (std::size_t k : order) {
      std::vector<double> col(n);
      for (std::size_t i = 0; i < n; ++i) col[i] = (*v)(i, k);
      s.vectors.push_back(std::move(col));
    }
  }
  return s;
}

double norm2(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

void normalize(std::vector<double>& x) {
  const double nrm = norm2(x);
  if (nrm > 0.0) {
    for (double& v : x) v /= nrm;
  }
}

}  // namespace

Spectrum sym_eigen(const SymMatrix& a, bool want_vectors) {
  const std::size_t n = a.size();
  if (n == 0) throw std::invalid_argument("empty matrix");
  Matrix v = a.to_dense();
  std::vector<double> d(n), e(n);
  tridiagonalize(v, d, e, want_vectors);
  ql_implicit(v, d, e, want_vectors);
  Spectrum s = package(d, want_vectors ? &v : nullptr);
  if (want_vectors) {
    for (auto& vec : s.vectors) normalize(vec);
    s.residual = pencil_residual(a, SymMatrix::identity(n), s);
  }
  return s;
}

Spectrum jacobi_eigen(const SymMatrix& a, bool want_vectors) {
  const std::size_t n = a.size();
  if (n == 0 || n > 8) throw std::invalid_argument("Jacobi path supports 1 ≤ n ≤ 8");
  Matrix m = a.to_dense();
  Matrix v(n, n);
  for (std::size_t i = 0; i < n; ++i) v(i, i) = 1.0;

  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    double total = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = 0; q < n; ++q) {
        total += m(p, q) * m(p, q);
        if (p != q) off += m(p, q) * m(p, q);
      }
    }
    if (off <= kEps * kEps * total) break;
    if (sweep + 1 == kMaxSweeps) throw ConvergenceFailure(kMaxSweeps);
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = m(p, q);
        if (apq == 0.0) continue;
        const double theta = (m(q, q) - m(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double mkp = m(k, p);
          const double mkq = m(k, q);
          m(k, p) = c * mkp - s * mkq;
          m(k, q) = s * mkp + c * mkq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double mpk = m(p, k);
          const double mqk = m(q, k);
          m(p, k) = c * mpk - s * mqk;
          m(q, k) = s * mpk + c * mqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = m(i, i);
  Spectrum s = package(d, want_vectors ? &v : nullptr);
  if (want_vectors) {
    for (auto& vec : s.vectors) normalize(vec);
    s.residual = pencil_residual(a, SymMatrix::identity(n), s);
  }
  return s;
}

Spectrum gen_eigen_spd(const SymMatrix& a, const SymMatrix& b, bool want_vectors) {
  if (a.size() != b.size()) throw std::invalid_argument("pencil dimension mismatch");
  const std::size_t n = a.size();
  const LowerTriangular l = cholesky(b);
  // C = L⁻¹ A L⁻ᵀ = L⁻¹ (L⁻¹ A)ᵀ.
  const Matrix x = l.solve_lower(a.to_dense());
  Matrix xt(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) xt(j, i) = x(i, j);
  }
  const SymMatrix c = SymMatrix::symmetrize(l.solve_lower(xt));
  Spectrum s = sym_eigen(c, want_vectors);
  if (want_vectors) {
    for (auto& vec : s.vectors) {
      l.solve_upper_transposed(vec);
      normalize(vec);
    }
    s.residual = pencil_residual(a, b, s);
  }
  return s;
}

Spectrum gen_eigen_psd(const SymMatrix& a, const SymMatrix& b, double deflation_tol,
                       bool want_vectors) {
  if (a.size() != b.size()) throw std::invalid_argument("pencil dimension mismatch");
  const std::size_t n = a.size();
  const Spectrum bs = sym_eigen(b, true);
  const double lmax = bs.values.back();
  if (!(lmax > 0.0)) throw DegeneratePencil();
  const double cut = deflation_tol * lmax;

  // Columns of W span the retained directions, scaled so Wᵀ B W = I.
  std::vector<std::vector<double>> w;
  for (std::size_t k = 0; k < n; ++k) {
    if (bs.values[k] > cut) {
      std::vector<double> col = bs.vectors[k];
      const double scale = 1.0 / std::sqrt(bs.values[k]);
      for (double& v : col) v *= scale;
      w.push_back(std::move(col));
    }
  }
  if (w.empty()) throw DegeneratePencil();
  const std::size_t r = w.size();

  std::vector<std::vector<double>> aw(r, std::vector<double>(n, 0.0));
  for (std::size_t k = 0; k < r; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto ai = a.row(i);
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += ai[j] * w[k][j];
      aw[k][i] = s;
    }
  }
  const SymMatrix c = SymMatrix::generate(r, [&](std::size_t p, std::size_t q) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += w[p][i] * aw[q][i];
    return s;
  });
  Spectrum s = sym_eigen(c, want_vectors);
  s.retained_dim = r;
  if (want_vectors) {
    for (auto& y : s.vectors) {
      std::vector<double> v(n, 0.0);
      for (std::size_t k = 0; k < r; ++k) {
        for (std::size_t i = 0; i < n; ++i) v[i] += w[k][i] * y[k];
      }
      normalize(v);
      y = std::move(v);
    }
    s.residual = pencil_residual(a, b, s);
  }
  return s;
}

double pencil_residual(const SymMatrix& a, const SymMatrix& b, const Spectrum& s) {
  const std::size_t n = a.size();
  double worst = 0.0;
  std::vector<double> r(n);
  for (std::size_t k = 0; k < s.vectors.size(); ++k) {
    const auto& v = s.vectors[k];
    const double lambda = s.values[k];
    for (std::size_t i = 0; i < n; ++i) {
      const auto ai = a.row(i);
      const auto bi = b.row(i);
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc += (ai[j] - lambda * bi[j]) * v[j];
      r[i] = acc;
    }
    worst = std::max(worst, norm2(r) / norm2(v));
  }
  return worst;
}

}  // namespace stablecurv
