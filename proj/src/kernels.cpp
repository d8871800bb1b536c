#include "stablecurv/kernels.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace stablecurv {

namespace {

void require_gamma(double gamma) {
  if (!(gamma > 0.0 && gamma < 2.0)) {
    throw std::domain_error("stability index must lie in (0,2), got " +
                            std::to_string(gamma));
  }
}

}  // namespace

StableParams::StableParams(double gamma, double omega_sq)
    : gamma_(gamma), hurst_(gamma / 2.0), omega_sq_(omega_sq) {
  require_gamma(gamma);
  if (!(omega_sq >= 0.0)) {
    throw std::domain_error("drift strength must be nonnegative");
  }
}

const char* to_string(SignClass s) noexcept {
  switch (s) {
    case SignClass::negative: return "negative";
    case SignClass::zero: return "zero";
    case SignClass::positive: return "positive";
  }
  return "?";
}

double abs_pow(double x, double p) noexcept {
  const double ax = std::fabs(x);
  if (ax == 0.0) return 0.0;
  if (p == 1.0) return ax;
  return std::exp(p * std::log(ax));
}

double psi(const StableParams& p, double xi, double eta) noexcept {
  const double g = p.gamma();
  return 0.5 * (abs_pow(xi, g) + abs_pow(eta, g) - abs_pow(xi - eta, g));
}

double fbm_covariance(double hurst, double s, double t) {
  if (!(hurst > 0.0 && hurst < 1.0)) {
    throw std::domain_error("Hurst exponent must lie in (0,1), got " +
                            std::to_string(hurst));
  }
  if (s < 0.0 || t < 0.0) {
    throw std::domain_error("fBM covariance needs nonnegative times");
  }
  const double e = 2.0 * hurst;
  return 0.5 * (abs_pow(s, e) + abs_pow(t, e) - abs_pow(s - t, e));
}

CrossSign cross_sign(const StableParams& p, long n, long m) {
  if (n < 1 || m < 1) {
    throw std::domain_error("cross-sign kernel needs positive frequencies");
  }
  if (p.is_cauchy()) {
    // n + m − (n + m) in integers.
    return {0.0, SignClass::zero};
  }
  const double g = p.gamma();
  const double a = abs_pow(static_cast<double>(n), g);
  const double b = abs_pow(static_cast<double>(m), g);
  const double value = 0.5 * (a + b - abs_pow(static_cast<double>(n + m), g));
  const double zero_band = 1e-14 * (a + b);
  SignClass cls = SignClass::zero;
  if (value > zero_band) cls = SignClass::positive;
  else if (value < -zero_band) cls = SignClass::negative;
  return {value, cls};
}

double alpha_coeff(double gamma) {
  require_gamma(gamma);
  if (gamma == 1.0) return 0.0;
  return 1.0 - std::exp2(gamma - 1.0);
}

double beta_coeff(double gamma) {
  require_gamma(gamma);
  if (gamma == 1.0) return 0.0;
  return 0.5 * (std::exp2(gamma + 1.0) - std::pow(3.0, gamma) - 1.0);
}

double increment_correlation(const StableParams& p, double xi, double eta) {
  if (xi == 0.0 || eta == 0.0) {
    throw std::domain_error("increment correlation undefined at frequency 0");
  }
  const double h = p.hurst();
  const double s = std::fabs(xi);
  const double t = std::fabs(eta);
  if (s == t) return 1.0;
  return fbm_covariance(h, s, t) / (abs_pow(s, h) * abs_pow(t, h));
}

}  // namespace stablecurv
