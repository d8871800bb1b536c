#include "stablecurv/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "stablecurv/eigensolve.hpp"
#include "stablecurv/errors.hpp"
#include "stablecurv/gamma_oracle.hpp"
#include "stablecurv/kernels.hpp"
#include "stablecurv/matrices.hpp"
#include "stablecurv/parallel.hpp"
#include "stablecurv/trig_poly.hpp"

namespace stablecurv {

namespace {

void require_dimension(std::size_t n) {
  if (n == 0) throw std::invalid_argument("dimension must be positive");
}

// Flips the global sign so that the largest-magnitude entry is positive.
void orient(std::vector<double>& v) {
  if (v.empty()) return;
  const auto it = std::max_element(v.begin(), v.end(), [](double a, double b) {
    return std::fabs(a) < std::fabs(b);
  });
  if (*it < 0.0) {
    for (double& x : v) x = -x;
  }
}

struct LineFit {
  double intercept;
  double slope;
};

LineFit least_squares_line(std::span<const double> x, std::span<const double> y) {
  const auto n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw InsufficientData(1, 2);
  const double slope = sxy / sxx;
  return {my - slope * mx, slope};
}

}  // namespace

CurvatureReport kappa(double gamma, std::size_t n, const KappaOptions& opts) {
  const StableParams p(gamma);
  require_dimension(n);
  const SymMatrix r = build_R(p.hurst(), n);
  const SymMatrix r2 = hadamard_power(r, 2);
  Spectrum s = gen_eigen_spd(r2, r, opts.with_vector);

  CurvatureReport rep;
  rep.gamma = gamma;
  rep.n = n;
  rep.kappa = s.values.front();
  if (opts.with_vector) {
    rep.minimizing_vector = std::move(s.vectors.front());
    orient(rep.minimizing_vector);
    rep.flags.perron_nonneg = perron_check(rep.minimizing_vector).nonnegative;
  }
  if (opts.with_z_matrix) {
    rep.flags.z_matrix_pass =
        n == 1 || max_offdiagonal(inverse_times(r, r2)) <= kZMatrixTol;
  }
  if (n >= 2 && !p.is_cauchy()) rep.flags.below_one = rep.kappa < 1.0;
  rep.flags.above_half = rep.kappa >= 0.5 - 1e-9;
  return rep;
}

std::vector<CurvatureReport> kappa_sequence(double gamma, std::size_t n_max,
                                            unsigned threads) {
  const StableParams p(gamma);
  if (n_max < 2) throw std::invalid_argument("sequence needs N_max ≥ 2");
  const KappaOptions light{.with_vector = false, .with_z_matrix = false};
  auto seq = parallel_map(
      n_max, [&](std::size_t i) { return kappa(p.gamma(), i + 1, light); }, threads);
  for (std::size_t i = 1; i < seq.size(); ++i) {
    seq[i].decrement = seq[i - 1].kappa - seq[i].kappa;
  }
  return seq;
}

double decay_exponent_fit(std::span<const CurvatureReport> seq, std::size_t n_lo,
                          std::size_t n_hi) {
  if (n_lo < 2 || n_hi < 10 * n_lo) {
    throw std::invalid_argument("fit range must span at least one decade with N ≥ 2");
  }
  if (seq.size() < n_hi) throw std::invalid_argument("sequence shorter than fit range");
  std::vector<double> lx, ly;
  for (std::size_t n = n_lo; n <= n_hi; ++n) {
    const auto& rep = seq[n - 1];
    if (rep.n != n || !rep.decrement) {
      throw std::invalid_argument("sequence is not indexed by N");
    }
    const double d = *rep.decrement;
    if (!(d >= kDecrementFloor)) continue;
    lx.push_back(std::log(static_cast<double>(n)));
    ly.push_back(std::log(d));
  }
  constexpr std::size_t kMinPoints = 10;
  if (lx.size() < kMinPoints) throw InsufficientData(lx.size(), kMinPoints);
  return -least_squares_line(lx, ly).slope;
}

double decay_exponent_fit(double gamma, std::size_t n_lo, std::size_t n_hi,
                          unsigned threads) {
  if (n_lo < 2 || n_hi < 10 * n_lo) {
    throw std::invalid_argument("fit range must span at least one decade with N ≥ 2");
  }
  const auto seq = kappa_sequence(gamma, n_hi, threads);
  return decay_exponent_fit(seq, n_lo, n_hi);
}

std::vector<double> default_quadratic_grid() {
  return {0.02, 0.04, 0.06, 0.08, 0.10, 0.12};
}

double quadratic_fit_c(std::span<const double> eps_grid, std::size_t n, Side side,
                       unsigned threads) {
  if (n < 100) throw std::invalid_argument("quadratic fit needs N ≥ 100");
  for (double e : eps_grid) {
    if (!(e > 0.0 && e <= 0.15)) {
      throw std::invalid_argument("ε must lie in (0, 0.15], got " + std::to_string(e));
    }
  }
  std::vector<double> sorted(eps_grid.begin(), eps_grid.end());
  std::sort(sorted.begin(), sorted.end());
  const auto distinct = static_cast<std::size_t>(
      std::unique(sorted.begin(), sorted.end()) - sorted.begin());
  if (distinct < 2) throw InsufficientData(distinct, 2);

  const double sign = side == Side::right ? 1.0 : -1.0;
  const KappaOptions light{.with_vector = false, .with_z_matrix = false};
  const auto y = parallel_map(
      eps_grid.size(),
      [&](std::size_t i) {
        const double e = eps_grid[i];
        return (1.0 - kappa(1.0 + sign * e, n, light).kappa) / (e * e);
      },
      threads);
  return least_squares_line(eps_grid, y).intercept;
}

std::vector<ZMatrixRow> zmatrix_scan(std::span<const double> h_grid, std::size_t n_max,
                                     bool all_sizes, unsigned threads) {
  if (n_max < 2) throw std::invalid_argument("Z-matrix scan needs N_max ≥ 2");
  struct Task {
    double hurst;
    std::size_t n;
  };
  std::vector<Task> tasks;
  for (double h : h_grid) {
    if (!(h > 0.0 && h < 1.0)) {
      throw std::domain_error("Hurst exponent must lie in (0,1), got " + std::to_string(h));
    }
    for (std::size_t n = all_sizes ? 2 : n_max; n <= n_max; ++n) tasks.push_back({h, n});
  }
  return parallel_map(
      tasks.size(),
      [&](std::size_t i) {
        const auto [h, n] = tasks[i];
        const SymMatrix r = build_R(h, n);
        const double off = max_offdiagonal(inverse_times(r, hadamard_power(r, 2)));
        return ZMatrixRow{h, n, off, off <= kZMatrixTol, cholesky(r).nonnegative()};
      },
      threads);
}

PerronResult perron_check(std::span<const double> minimizing_vector) {
  std::vector<double> v(minimizing_vector.begin(), minimizing_vector.end());
  orient(v);
  double inf_norm = 0.0;
  for (double x : v) inf_norm = std::max(inf_norm, std::fabs(x));
  const double cut = -1e-8 * inf_norm;
  const auto negatives =
      static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [cut](double x) { return x < cut; }));
  return {negatives == 0, negatives};
}

PerronResult perron_check(double hurst, std::size_t n) {
  if (!(hurst > 0.0 && hurst < 1.0)) {
    throw std::domain_error("Hurst exponent must lie in (0,1)");
  }
  const auto rep = kappa(2.0 * hurst, n, {.with_vector = true, .with_z_matrix = false});
  return perron_check(rep.minimizing_vector);
}

double min_entry_bound(double hurst, std::size_t n) {
  if (!(hurst > 0.0 && hurst <= 0.5)) {
    throw std::domain_error("entry bound is only claimed for H in (0, 1/2]");
  }
  require_dimension(n);
  const SymMatrix r = build_R(hurst, n);
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) m = std::min(m, r(i, j));
  }
  return m;
}

DriftSpectrumReport drift_spectrum(double omega_sq, std::size_t n, double x,
                                   std::size_t grid_size) {
  if (!(omega_sq >= 0.0)) throw std::domain_error("drift strength must be nonnegative");
  require_dimension(n);
  if (grid_size == 0) throw std::invalid_argument("x-grid must be nonempty");
  const SymMatrix r = build_R(0.5, n);
  const SymMatrix r2 = hadamard_power(r, 2);

  auto eigenvalues_at = [&](double xx) {
    const DriftMatrix dm = extract_D0(omega_sq, n, xx);
    const SymMatrix a = SymMatrix::generate(n, [&](std::size_t i, std::size_t j) {
      return r2(i, j) + 0.5 * (dm.d0(i, j).real() + dm.d0(j, i).real());
    });
    return gen_eigen_spd(a, r).values;
  };

  DriftSpectrumReport rep;
  rep.omega_sq = omega_sq;
  rep.n = n;
  rep.x = x;
  rep.eigenvalues = eigenvalues_at(x);
  const double shift = 0.5 * omega_sq * std::cos(x);
  rep.max_shift_deviation = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double expected = static_cast<double>(2 * k + 1) + shift;
    rep.max_shift_deviation =
        std::max(rep.max_shift_deviation, std::fabs(rep.eigenvalues[k] - expected));
  }

  const auto grid = x_grid(grid_size);
  const auto minima = parallel_map(grid.size(), [&](std::size_t i) {
    return eigenvalues_at(grid[i]).front();
  });
  const auto best = std::min_element(minima.begin(), minima.end());
  rep.global_kappa = *best;
  rep.argmin_x = grid[static_cast<std::size_t>(best - minima.begin())];
  return rep;
}

namespace {

// Real quadratic forms of Γ and Γ₂ at angle x in the coordinates
// w = (c_1..c_N, s_1..s_N) of f = Σ c_n cos nx + s_n sin nx.
struct RealForms {
  SymMatrix gamma;
  SymMatrix gamma2;
};

RealForms real_forms(const SymMatrix& k1, const SymMatrix& k2, std::size_t n, double x) {
  const std::size_t d = 2 * n;
  // Frequency index f: 0..n−1 ↦ +(f+1), n..2n−1 ↦ −(f−n+1).
  // b_ξ = a_ξ e^{iξx}; a_{±k} = (c_k ∓ i s_k)/2.
  std::vector<Complex> t(d * d, Complex{});
  for (std::size_t k = 0; k < n; ++k) {
    const double kk = static_cast<double>(k + 1);
    const Complex ep = std::polar(0.5, kk * x);
    const Complex em = std::polar(0.5, -kk * x);
    t[k * d + k] = ep;
    t[k * d + n + k] = Complex(0.0, -1.0) * ep;
    t[(n + k) * d + k] = em;
    t[(n + k) * d + n + k] = Complex(0.0, 1.0) * em;
  }
  auto form = [&](const SymMatrix& kern) {
    // G_pq = Re Σ_{ξ,η} T_ξp K_ξη conj(T_ηq).
    std::vector<Complex> kt(d * d, Complex{});
    for (std::size_t xi = 0; xi < d; ++xi) {
      for (std::size_t eta = 0; eta < d; ++eta) {
        const double kv = kern(xi, eta);
        if (kv == 0.0) continue;
        for (std::size_t q = 0; q < d; ++q) kt[xi * d + q] += kv * std::conj(t[eta * d + q]);
      }
    }
    return SymMatrix::generate(d, [&](std::size_t p, std::size_t q) {
      Complex s{};
      for (std::size_t xi = 0; xi < d; ++xi) s += t[xi * d + p] * kt[xi * d + q];
      return s.real();
    });
  };
  return {form(k1), form(k2)};
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::vector<double> mat_vec(const SymMatrix& m, std::span<const double> v) {
  std::vector<double> out(m.size(), 0.0);
  for (std::size_t i = 0; i < m.size(); ++i) out[i] = dot(m.row(i), v);
  return out;
}

// Steepest descent on the ratio wᵀG₂w / wᵀG₁w in the G₁ metric, with the
// step chosen by Rayleigh–Ritz on span{w, direction}; w is projected back
// onto the G₁-unit sphere after every step.
double descend(const RealForms& forms, std::vector<double> w, const RealCurvatureOptions& opts) {
  const LowerTriangular l = cholesky(forms.gamma);
  auto g1_normalize = [&](std::vector<double>& v) {
    const double nrm = std::sqrt(dot(v, mat_vec(forms.gamma, v)));
    for (double& x : v) x /= nrm;
  };
  g1_normalize(w);
  auto g2w = mat_vec(forms.gamma2, w);
  double rho = dot(w, g2w);

  for (std::size_t it = 0; it < opts.max_iterations; ++it) {
    const auto g1w = mat_vec(forms.gamma, w);
    std::vector<double> r(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) r[i] = g2w[i] - rho * g1w[i];
    std::vector<double> dir = r;
    l.solve_lower(dir);
    l.solve_upper_transposed(dir);
    const double grad_sq = dot(r, dir);
    if (grad_sq <= opts.tolerance * 1e-6 * std::max(1.0, rho)) break;

    // G₁-orthogonalize the direction against w, then normalize it.
    const double proj = dot(dir, g1w);
    for (std::size_t i = 0; i < w.size(); ++i) dir[i] -= proj * w[i];
    const auto g1d = mat_vec(forms.gamma, dir);
    const double dn = std::sqrt(dot(dir, g1d));
    if (!(dn > 0.0)) break;
    for (double& x : dir) x /= dn;

    const auto g2d = mat_vec(forms.gamma2, dir);
    const double a11 = rho;
    const double a12 = dot(w, g2d);
    const double a22 = dot(dir, g2d);
    // Smallest eigenpair of the 2×2 Ritz matrix [[a11, a12], [a12, a22]].
    const double mean = 0.5 * (a11 + a22);
    const double rad = std::hypot(0.5 * (a11 - a22), a12);
    const double lambda = mean - rad;
    double cw = a12;
    double cd = lambda - a11;
    if (std::fabs(cw) + std::fabs(cd) == 0.0) break;
    if (std::fabs(a12) < 1e-300) {
      cw = a11 <= a22 ? 1.0 : 0.0;
      cd = 1.0 - cw;
    }
    std::vector<double> next(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) next[i] = cw * w[i] + cd * dir[i];
    g1_normalize(next);
    const auto g2n = mat_vec(forms.gamma2, next);
    const double rho_next = dot(next, g2n);
    if (!(rho_next < rho)) break;
    w = std::move(next);
    g2w = g2n;
    rho = rho_next;
  }
  return rho;
}

}  // namespace

RealCurvature real_curvature(double gamma, std::size_t n, const RealCurvatureOptions& opts) {
  const StableParams p(gamma);
  require_dimension(n);
  if (opts.restarts == 0 || opts.x_grid_size == 0) {
    throw std::invalid_argument("optimizer needs at least one restart and grid point");
  }
  const std::size_t d = 2 * n;
  auto freq = [n](std::size_t i) {
    return i < n ? static_cast<double>(i + 1) : -static_cast<double>(i - n + 1);
  };
  const SymMatrix k1 =
      SymMatrix::generate(d, [&](std::size_t i, std::size_t j) { return psi(p, freq(i), freq(j)); });
  const SymMatrix k2 = hadamard_power(k1, 2);

  RealCurvature out{};
  const Spectrum pencil = gen_eigen_psd(k2, k1);
  out.pencil_kappa = pencil.values.front();
  out.retained_dim = pencil.retained_dim;

  const auto grid = x_grid(opts.x_grid_size);
  std::vector<double> results;
  results.reserve(opts.restarts);
  for (unsigned restart = 0; restart < opts.restarts; ++restart) {
    CounterRng rng(opts.seed, restart);
    const double x = grid[static_cast<std::size_t>(
        rng.integer(0, static_cast<long>(grid.size()) - 1))];
    std::vector<double> w(d);
    for (double& v : w) v = rng.normal();
    results.push_back(descend(real_forms(k1, k2, n, x), std::move(w), opts));
  }
  const auto [lo, hi] = std::minmax_element(results.begin(), results.end());
  if (*hi - *lo > 1e-3) throw OptimizationStall(*lo, *hi);
  out.constrained_kappa = *lo;
  return out;
}

double single_mode_kappa(double gamma) {
  const double a = alpha_coeff(gamma);
  if (gamma <= 1.0) return (1.0 + a * a) / (1.0 + a);
  return 1.0 + a;
}

ContractionProfile contraction_profile(std::size_t n) {
  require_dimension(n);
  ContractionProfile prof;
  prof.rates.reserve(n);
  double log_sum = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    const double rate = static_cast<double>(2 * k - 1);
    prof.rates.push_back(rate);
    log_sum += std::log(rate);
  }
  const double nd = static_cast<double>(n);
  prof.geometric_mean = std::exp(log_sum / nd);
  prof.stirling_ratio = prof.geometric_mean / (2.0 * nd / std::numbers::e);
  prof.volume_ratio_log = 0.5 * log_sum;
  return prof;
}

std::uint64_t double_factorial_odd(std::size_t n) {
  if (n > kMaxExactDoubleFactorial) {
    throw std::invalid_argument("exact double factorial limited to N ≤ 15");
  }
  std::uint64_t r = 1;
  for (std::uint64_t k = 1; k <= n; ++k) r *= 2 * k - 1;
  return r;
}

std::vector<LandscapeRow> landscape(std::span<const double> gamma_grid, std::size_t n,
                                    unsigned threads) {
  require_dimension(n);
  for (double g : gamma_grid) StableParams{g};
  const KappaOptions light{.with_vector = false, .with_z_matrix = false};
  return parallel_map(
      gamma_grid.size(),
      [&](std::size_t i) {
        const double g = gamma_grid[i];
        return LandscapeRow{g, n, kappa(g, n, light).kappa, single_mode_kappa(g)};
      },
      threads);
}

}  // namespace stablecurv
