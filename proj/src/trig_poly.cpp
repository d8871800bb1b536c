#include "stablecurv/trig_poly.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "stablecurv/format.hpp"

namespace stablecurv {

TrigPoly::TrigPoly(std::span<const Term> terms) {
  for (const auto& t : terms) coeffs_[t.freq] += t.coeff;
  prune();
}

TrigPoly::TrigPoly(std::initializer_list<Term> terms)
    : TrigPoly(std::span<const Term>(terms.begin(), terms.size())) {}

TrigPoly::TrigPoly(std::map<int, Complex> coeffs) : coeffs_(std::move(coeffs)) {
  prune();
}

TrigPoly TrigPoly::monomial(int freq, Complex coeff) { return TrigPoly({{freq, coeff}}); }

TrigPoly TrigPoly::cosine(int n, double amp) {
  if (n == 0) return constant(amp);
  return TrigPoly({{n, 0.5 * amp}, {-n, 0.5 * amp}});
}

TrigPoly TrigPoly::sine(int n, double amp) {
  if (n == 0) return {};
  // sin nx = (e^{inx} − e^{−inx}) / 2i
  return TrigPoly({{n, Complex(0.0, -0.5 * amp)}, {-n, Complex(0.0, 0.5 * amp)}});
}

void TrigPoly::prune() {
  const double cut = kPruneRelative * max_abs_coeff();
  std::erase_if(coeffs_, [cut](const auto& kv) {
    return kv.second == Complex(0.0, 0.0) || std::abs(kv.second) <= cut;
  });
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  T value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw std::invalid_argument("bad number in trigonometric polynomial: '" +
                                std::string(s) + "'");
  }
  return value;
}

}  // namespace

TrigPoly TrigPoly::parse(std::string_view text) {
  std::vector<Term> terms;
  std::size_t pos = 0;
  while (true) {
    const auto open = text.find('(', pos);
    const auto rest = trim(text.substr(pos, open == std::string_view::npos
                                                 ? std::string_view::npos
                                                 : open - pos));
    if (!rest.empty() && rest.find_first_not_of(";,") != std::string_view::npos) {
      throw std::invalid_argument("unexpected text in trigonometric polynomial: '" +
                                  std::string(rest) + "'");
    }
    if (open == std::string_view::npos) break;
    const auto close = text.find(')', open);
    if (close == std::string_view::npos) {
      throw std::invalid_argument("unterminated triple in trigonometric polynomial");
    }
    const auto body = text.substr(open + 1, close - open - 1);
    const auto c1 = body.find(',');
    const auto c2 = c1 == std::string_view::npos ? c1 : body.find(',', c1 + 1);
    if (c2 == std::string_view::npos || body.find(',', c2 + 1) != std::string_view::npos) {
      throw std::invalid_argument("expected (frequency, re, im), got '(" +
                                  std::string(body) + ")'");
    }
    const int n = parse_number<int>(body.substr(0, c1));
    const double re = parse_number<double>(body.substr(c1 + 1, c2 - c1 - 1));
    const double im = parse_number<double>(body.substr(c2 + 1));
    terms.push_back({n, Complex(re, im)});
    pos = close + 1;
  }
  return TrigPoly(std::span<const Term>(terms));
}

std::string TrigPoly::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (const auto& [n, c] : coeffs_) {
    if (!first) out << ' ';
    first = false;
    out << '(' << n << ',' << format_double(c.real()) << ',' << format_double(c.imag())
        << ')';
  }
  return out.str();
}

Complex TrigPoly::coeff(int freq) const noexcept {
  const auto it = coeffs_.find(freq);
  return it == coeffs_.end() ? Complex{} : it->second;
}

double TrigPoly::max_abs_coeff() const noexcept {
  double m = 0.0;
  for (const auto& kv : coeffs_) m = std::max(m, std::abs(kv.second));
  return m;
}

double TrigPoly::norm_sq() const noexcept {
  double s = 0.0;
  for (const auto& kv : coeffs_) s += std::norm(kv.second);
  return s;
}

bool TrigPoly::is_real(double tol) const noexcept {
  for (const auto& [n, c] : coeffs_) {
    if (std::abs(c - std::conj(coeff(-n))) > tol) return false;
  }
  return true;
}

Complex TrigPoly::evaluate(double x) const noexcept {
  Complex s{};
  for (const auto& [n, c] : coeffs_) s += c * std::polar(1.0, n * x);
  return s;
}

TrigPoly operator+(const TrigPoly& a, const TrigPoly& b) {
  std::map<int, Complex> out = a.coeffs_;
  for (const auto& [n, c] : b.coeffs_) out[n] += c;
  return TrigPoly(std::move(out));
}

TrigPoly operator-(const TrigPoly& a, const TrigPoly& b) {
  std::map<int, Complex> out = a.coeffs_;
  for (const auto& [n, c] : b.coeffs_) out[n] -= c;
  return TrigPoly(std::move(out));
}

TrigPoly operator*(Complex s, const TrigPoly& a) {
  std::map<int, Complex> out;
  for (const auto& [n, c] : a.coeffs_) out[n] = s * c;
  return TrigPoly(std::move(out));
}

TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) {
  std::map<int, Complex> out;
  for (const auto& [n, c] : a.coeffs_) {
    for (const auto& [m, d] : b.coeffs_) out[n + m] += c * d;
  }
  return TrigPoly(std::move(out));
}

double max_coeff_diff(const TrigPoly& a, const TrigPoly& b) noexcept {
  double worst = 0.0;
  for (const auto& [n, c] : a.coeffs()) worst = std::max(worst, std::abs(c - b.coeff(n)));
  for (const auto& [n, c] : b.coeffs()) worst = std::max(worst, std::abs(c - a.coeff(n)));
  return worst;
}

std::vector<double> x_grid(std::size_t size) {
  std::vector<double> xs(size);
  for (std::size_t k = 0; k < size; ++k) {
    xs[k] = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(size);
  }
  return xs;
}

void write_field_csv(std::ostream& out, const TrigPoly& f, std::size_t grid_size) {
  out << "x,re,im\n";
  for (double x : x_grid(grid_size)) {
    const Complex v = f.evaluate(x);
    out << format_double(x) << ',' << format_double(v.real()) << ','
        << format_double(v.imag()) << '\n';
  }
}

}  // namespace stablecurv
