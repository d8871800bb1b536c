#pragma once

// Closed-form scalar kernels of the γ-stable generator on the torus and of
// fractional Brownian motion.

namespace stablecurv {

/// Stability index γ ∈ (0,2) with derived Hurst exponent H = γ/2 and an
/// optional cosine-drift strength ω² ≥ 0.
class StableParams {
 public:
  /// Throws std::domain_error when γ ∉ (0,2) or ω² < 0.
  explicit StableParams(double gamma, double omega_sq = 0.0);

  double gamma() const noexcept { return gamma_; }
  double hurst() const noexcept { return hurst_; }
  double omega_sq() const noexcept { return omega_sq_; }
  bool is_cauchy() const noexcept { return gamma_ == 1.0; }

 private:
  double gamma_;
  double hurst_;
  double omega_sq_;
};

enum class SignClass { negative, zero, positive };

const char* to_string(SignClass s) noexcept;

struct CrossSign {
  double value;
  SignClass sign_class;
};

/// |x|^p as exp(p·ln|x|), with |x| returned exactly for p == 1 and 0 for x == 0.
double abs_pow(double x, double p) noexcept;

/// Ψ_γ(ξ,η) = ½(|ξ|^γ + |η|^γ − |ξ−η|^γ).
double psi(const StableParams& p, double xi, double eta) noexcept;

/// R_H(s,t) = ½(s^{2H} + t^{2H} − |s−t|^{2H}). Throws std::domain_error for
/// H ∉ (0,1) or negative times.
double fbm_covariance(double hurst, double s, double t);

/// Ψ_γ(n,−m) for n, m ≥ 1 together with its sign class. At γ = 1 the value
/// is the structural zero.
CrossSign cross_sign(const StableParams& p, long n, long m);

/// α(γ) = 1 − 2^{γ−1}, the cos(2nx) coefficient of Γ(cos nx, cos nx).
double alpha_coeff(double gamma);

/// β(γ) = (2^{γ+1} − 3^γ − 1)/2, the cos 3x coefficient of the drift term.
double beta_coeff(double gamma);

/// ρ_γ(ξ,η) = R_{γ/2}(|ξ|,|η|) / (|ξ|^{γ/2}|η|^{γ/2}). Throws
/// std::domain_error on a zero frequency.
double increment_correlation(const StableParams& p, double xi, double eta);

}  // namespace stablecurv
