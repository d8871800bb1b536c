#include "stablecurv/gamma_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stablecurv/kernels.hpp"

namespace stablecurv {

TrigPoly apply_generator(double gamma, const TrigPoly& f) {
  const StableParams p(gamma);
  std::map<int, Complex> out;
  for (const auto& [n, c] : f.coeffs()) out[n] = -abs_pow(n, p.gamma()) * c;
  return TrigPoly(std::move(out));
}

TrigPoly carre_du_champ(double gamma, const TrigPoly& f, const TrigPoly& g) {
  const StableParams p(gamma);
  std::map<int, Complex> out;
  for (const auto& [n, a] : f.coeffs()) {
    for (const auto& [m, b] : g.coeffs()) {
      const double k = psi(p, n, m);
      if (k == 0.0) continue;
      out[n - m] += a * std::conj(b) * k;
    }
  }
  return TrigPoly(std::move(out));
}

TrigPoly gamma2_definition(double gamma, const TrigPoly& f) {
  const TrigPoly lf = apply_generator(gamma, f);
  const TrigPoly l_gamma = apply_generator(gamma, carre_du_champ(gamma, f, f));
  return 0.5 * (l_gamma - carre_du_champ(gamma, f, lf) - carre_du_champ(gamma, lf, f));
}

TrigPoly gamma2_hadamard(double gamma, const TrigPoly& f) {
  const StableParams p(gamma);
  std::map<int, Complex> out;
  for (const auto& [n, a] : f.coeffs()) {
    for (const auto& [m, b] : f.coeffs()) {
      const double k = psi(p, n, m);
      if (k == 0.0) continue;
      out[n - m] += a * std::conj(b) * (k * k);
    }
  }
  return TrigPoly(std::move(out));
}

TrigPoly drift_apply(double omega_sq, const TrigPoly& f) {
  if (!(omega_sq >= 0.0)) throw std::domain_error("drift strength must be nonnegative");
  // ∇: a_n ↦ i n a_n; then multiply by b = −ω² sin x = (iω²/2)(e^{ix} − e^{−ix}).
  std::map<int, Complex> grad;
  for (const auto& [n, c] : f.coeffs()) grad[n] = Complex(0.0, n) * c;
  const TrigPoly b({{1, Complex(0.0, 0.5 * omega_sq)}, {-1, Complex(0.0, -0.5 * omega_sq)}});
  return b * TrigPoly(std::move(grad));
}

TrigPoly drift_correction(double gamma, double omega_sq, const TrigPoly& f) {
  const TrigPoly bf = drift_apply(omega_sq, f);
  const TrigPoly transport = drift_apply(omega_sq, carre_du_champ(gamma, f, f));
  return 0.5 * (transport - carre_du_champ(gamma, f, bf) - carre_du_champ(gamma, bf, f));
}

TrigPoly drift_gamma2(double gamma, double omega_sq, const TrigPoly& f) {
  return gamma2_definition(gamma, f) + drift_correction(gamma, omega_sq, f);
}

Complex ComplexMatrix::quadratic_form(const std::vector<Complex>& v) const {
  Complex s{};
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) s += std::conj(v[i]) * data_[i * n_ + j] * v[j];
  }
  return s;
}

double ComplexMatrix::max_imag() const noexcept {
  double m = 0.0;
  for (const auto& c : data_) m = std::max(m, std::fabs(c.imag()));
  return m;
}

DriftMatrix extract_D0(double omega_sq, std::size_t n, double x) {
  if (n == 0) throw std::invalid_argument("dimension must be positive");
  constexpr double kGamma = 1.0;
  ComplexMatrix raw(n);
  // With v_k = a_k e^{ikx}, the (n,m) basis pair contributes
  // a_n conj(a_m) Q(e_n,e_m)(x) = conj(v_m) [e^{−i(n−m)x} Q(e_n,e_m)(x)] v_n,
  // which is entry (m, n) of the matrix in v* D v.
  std::vector<TrigPoly> basis;
  std::vector<TrigPoly> drifted;
  for (std::size_t k = 1; k <= n; ++k) {
    basis.push_back(TrigPoly::monomial(static_cast<int>(k)));
    drifted.push_back(drift_apply(omega_sq, basis.back()));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const TrigPoly transport =
          drift_apply(omega_sq, carre_du_champ(kGamma, basis[i], basis[j]));
      const TrigPoly coupling = carre_du_champ(kGamma, basis[i], drifted[j]);
      const Complex q = (0.5 * transport - coupling).evaluate(x);
      const double shift = -static_cast<double>(static_cast<long>(i) - static_cast<long>(j)) * x;
      raw(j, i) = std::polar(1.0, shift) * q;
    }
  }
  ComplexMatrix d0(n);
  double dev = 0.0;
  const double scale = 0.5 * omega_sq * std::cos(x);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      d0(i, j) = 0.5 * (raw(i, j) + std::conj(raw(j, i)));
      const double expected = scale * static_cast<double>(std::min(i, j) + 1);
      dev = std::max(dev, std::abs(d0(i, j) - expected));
    }
  }
  return {std::move(d0), std::move(raw), dev};
}

double single_mode_ratio(double gamma, int n, double x) {
  const double a = alpha_coeff(gamma);
  const double c = std::cos(2.0 * n * x);
  return abs_pow(n, gamma) * (1.0 + a * a * c) / (1.0 + a * c);
}

double drift_single_mode_ratio(double gamma, double omega_sq, double x) {
  if (!(omega_sq >= 0.0)) throw std::domain_error("drift strength must be nonnegative");
  const double a = alpha_coeff(gamma);
  const double b = beta_coeff(gamma);
  const double c2 = std::cos(2.0 * x);
  const double num =
      1.0 + a * a * c2 + 0.5 * omega_sq * (std::cos(x) + b * std::cos(3.0 * x));
  return num / (1.0 + a * c2);
}

std::vector<Complex> phase_stripped(const TrigPoly& f, std::size_t n, double x) {
  std::vector<Complex> v(n);
  for (std::size_t k = 1; k <= n; ++k) {
    v[k - 1] = f.coeff(static_cast<int>(k)) * std::polar(1.0, static_cast<double>(k) * x);
  }
  return v;
}

}  // namespace stablecurv
