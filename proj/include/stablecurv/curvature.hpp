#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "stablecurv/random.hpp"

namespace stablecurv {

/// Named pass/fail checks attached to a curvature computation. A check that
/// was not evaluated is left empty.
struct CurvatureFlags {
  /// Off-diagonal of R_H⁻¹R_H^{∘2} is ≤ 1e-10.
  std::optional<bool> z_matrix_pass;
  /// Minimizing vector has no entry below −1e-8·‖v‖∞ after sign normalization.
  std::optional<bool> perron_nonneg;
  /// κ < 1 (checked for N ≥ 2, γ ≠ 1).
  std::optional<bool> below_one;
  /// κ ≥ ½ − 1e-9.
  std::optional<bool> above_half;
};

struct CurvatureReport {
  double gamma = 0.0;
  std::size_t n = 0;
  double kappa = 0.0;
  std::vector<double> minimizing_vector;
  /// κ(γ, N−1) − κ(γ, N).
  std::optional<double> decrement;
  CurvatureFlags flags;
};

struct KappaOptions {
  bool with_vector = true;
  bool with_z_matrix = true;
};

/// κ(γ,N) = λ_min(R_H^{∘2}, R_H), H = γ/2.
CurvatureReport kappa(double gamma, std::size_t n, const KappaOptions& opts = {});

/// Reports for N = 1..n_max (no vectors, no Z-matrix check) with decrements.
std::vector<CurvatureReport> kappa_sequence(double gamma, std::size_t n_max,
                                            unsigned threads = 0);

/// Negated least-squares slope of ln δ_N against ln N for N ∈ [n_lo, n_hi].
/// Decrements below 1e-14 are skipped; throws InsufficientData with fewer
/// than 10 usable points.
double decay_exponent_fit(double gamma, std::size_t n_lo, std::size_t n_hi,
                          unsigned threads = 0);
/// Same fit on an already computed sequence (indexed so that seq[k].n == k+1).
double decay_exponent_fit(std::span<const CurvatureReport> seq, std::size_t n_lo,
                          std::size_t n_hi);

inline constexpr double kDecrementFloor = 1e-14;

enum class Side { right, left };

/// Fits (1 − κ(1 ± ε, N))/ε² = a + bε over the grid and returns a.
double quadratic_fit_c(std::span<const double> eps_grid, std::size_t n,
                       Side side = Side::right, unsigned threads = 0);

std::vector<double> default_quadratic_grid();

struct ZMatrixRow {
  double hurst;
  std::size_t n;
  /// Largest off-diagonal entry of R_H⁻¹ R_H^{∘2}.
  double max_offdiag;
  bool pass;
  /// Every entry of the Cholesky factor of R_H is ≥ 0 (recorded, not assumed).
  bool cholesky_nonneg;
};

inline constexpr double kZMatrixTol = 1e-10;

/// One row per (H, N) with N = 2..n_max, or only N = n_max when
/// `all_sizes` is false. Rows are ordered by H then N.
std::vector<ZMatrixRow> zmatrix_scan(std::span<const double> h_grid, std::size_t n_max,
                                     bool all_sizes = true, unsigned threads = 0);

struct PerronResult {
  bool nonnegative;
  /// Entries below −1e-8·‖v‖∞ once the largest-magnitude entry is positive.
  std::size_t sign_changes;
};

PerronResult perron_check(double hurst, std::size_t n);
PerronResult perron_check(std::span<const double> minimizing_vector);

/// min_{n ≤ m ≤ N} R_H(n,m). Throws std::domain_error for H > ½.
double min_entry_bound(double hurst, std::size_t n);

struct DriftSpectrumReport {
  double omega_sq;
  std::size_t n;
  double x;
  /// Ascending eigenvalues of R⁻¹(R^{∘2} + D₀(x)) at γ = 1.
  std::vector<double> eigenvalues;
  /// max_k |eigenvalues[k−1] − (2k−1) − (ω²/2) cos x|.
  double max_shift_deviation;
  /// Smallest eigenvalue over the x-grid.
  double global_kappa;
  double argmin_x;
};

inline constexpr std::size_t kDriftGridSize = 4096;

/// At γ = 1 with D₀ extracted from the oracle at every point.
DriftSpectrumReport drift_spectrum(double omega_sq, std::size_t n, double x,
                                   std::size_t grid_size = kDriftGridSize);

struct RealCurvature {
  /// λ_min of the deflated (Ψ^{∘2}, Ψ) pencil on {−N..−1, 1..N}.
  double pencil_kappa;
  std::size_t retained_dim;
  /// Infimum of Γ₂/Γ over real polynomials of degree ≤ N and x.
  double constrained_kappa;
};

struct RealCurvatureOptions {
  unsigned restarts = 20;
  std::size_t x_grid_size = 64;
  std::uint64_t seed = kDefaultSeed;
  double tolerance = 1e-8;
  std::size_t max_iterations = 20000;
};

RealCurvature real_curvature(double gamma, std::size_t n,
                             const RealCurvatureOptions& opts = {});

/// κ₁(γ): (1+α²)/(1+α) for γ ≤ 1, 1+α for γ > 1.
double single_mode_kappa(double gamma);

struct ContractionProfile {
  std::vector<double> rates;
  double geometric_mean;
  /// geometric_mean / (2N/e).
  double stirling_ratio;
  /// ½ Σ ln(2k−1) = ½ ln (2N−1)!!.
  double volume_ratio_log;
};

ContractionProfile contraction_profile(std::size_t n);

inline constexpr std::size_t kMaxExactDoubleFactorial = 15;

/// (2N−1)!! in 64-bit integers for N ≤ 15.
std::uint64_t double_factorial_odd(std::size_t n);

struct LandscapeRow {
  double gamma;
  std::size_t n;
  double kappa;
  double kappa_single_mode;
};

std::vector<LandscapeRow> landscape(std::span<const double> gamma_grid, std::size_t n,
                                    unsigned threads = 0);

}  // namespace stablecurv
