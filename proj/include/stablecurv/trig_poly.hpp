#pragma once

#include <complex>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace stablecurv {

using Complex = std::complex<double>;

/// One (frequency, coefficient) pair of a trigonometric polynomial.
struct Term {
  int freq;
  Complex coeff;
};

/// Finitely supported map n ↦ a_n, read as f(x) = Σ a_n e^{inx}.
///
/// Frequencies are exact integers; coefficients are doubles. After every
/// construction, coefficients below 1e-15 × (largest magnitude) are dropped,
/// so exact zeros never appear in the support.
class TrigPoly {
 public:
  static constexpr double kPruneRelative = 1e-15;

  TrigPoly() = default;
  explicit TrigPoly(std::span<const Term> terms);
  TrigPoly(std::initializer_list<Term> terms);
  explicit TrigPoly(std::map<int, Complex> coeffs);

  static TrigPoly monomial(int freq, Complex coeff = 1.0);
  static TrigPoly constant(Complex c) { return monomial(0, c); }
  /// amp · cos(n x).
  static TrigPoly cosine(int n, double amp = 1.0);
  /// amp · sin(n x).
  static TrigPoly sine(int n, double amp = 1.0);

  /// Parses "(n, re, im)" triples separated by whitespace, ';' or ','
  /// between the parentheses, e.g. "(1,0.5,0) (-1,0.5,0)".
  /// Throws std::invalid_argument on malformed input.
  static TrigPoly parse(std::string_view text);
  std::string to_string() const;

  const std::map<int, Complex>& coeffs() const noexcept { return coeffs_; }
  Complex coeff(int freq) const noexcept;
  bool empty() const noexcept { return coeffs_.empty(); }
  std::size_t support_size() const noexcept { return coeffs_.size(); }
  double max_abs_coeff() const noexcept;
  /// Σ |a_n|².
  double norm_sq() const noexcept;

  /// a_{−n} == conj(a_n) for every n, up to `tol` in absolute value.
  bool is_real(double tol = 0.0) const noexcept;

  Complex evaluate(double x) const noexcept;

  friend TrigPoly operator+(const TrigPoly& a, const TrigPoly& b);
  friend TrigPoly operator-(const TrigPoly& a, const TrigPoly& b);
  friend TrigPoly operator*(Complex s, const TrigPoly& a);
  /// Pointwise product (convolution of coefficients).
  friend TrigPoly operator*(const TrigPoly& a, const TrigPoly& b);

 private:
  void prune();

  std::map<int, Complex> coeffs_;
};

/// Largest coefficientwise |a_n − b_n|.
double max_coeff_diff(const TrigPoly& a, const TrigPoly& b) noexcept;

/// Uniform grid 2πk/size, k = 0..size−1.
std::vector<double> x_grid(std::size_t size);

/// Header "x,re,im" then one row per grid point.
void write_field_csv(std::ostream& out, const TrigPoly& f, std::size_t grid_size);

}  // namespace stablecurv
