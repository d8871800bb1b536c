#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "stablecurv/checks.hpp"
#include "stablecurv/gamma_oracle.hpp"
#include "stablecurv/kernels.hpp"
#include "stablecurv/matrices.hpp"
#include "stablecurv/random.hpp"

using namespace stablecurv;

namespace {

constexpr double kPi = std::numbers::pi;

Complex form(const SymMatrix& m, const std::vector<Complex>& v) {
  Complex s{};
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) s += std::conj(v[i]) * m(i, j) * v[j];
  }
  return s;
}

}  // namespace

TEST_CASE("TrigPoly basics") {
  const TrigPoly c = TrigPoly::cosine(2, 3.0);
  CHECK(c.coeff(2) == Complex(1.5, 0));
  CHECK(c.coeff(-2) == Complex(1.5, 0));
  CHECK(c.is_real());
  CHECK(c.evaluate(0.3).real() == doctest::Approx(3 * std::cos(0.6)));
  const TrigPoly s = TrigPoly::sine(1);
  CHECK(s.is_real());
  CHECK(s.evaluate(0.7).real() == doctest::Approx(std::sin(0.7)));
  CHECK(std::fabs(s.evaluate(0.7).imag()) < 1e-15);
  CHECK_FALSE(TrigPoly::monomial(1).is_real());

  const TrigPoly z = c - c;
  CHECK(z.empty());
  CHECK(TrigPoly({{3, 0.0}}).empty());

  // Pruning of numerical dust relative to the largest coefficient.
  const TrigPoly dust({{0, 1.0}, {5, 1e-17}});
  CHECK(dust.support_size() == 1);

  const TrigPoly prod = TrigPoly::cosine(1) * TrigPoly::cosine(1);
  CHECK(prod.coeff(0) == Complex(0.5, 0));
  CHECK(prod.coeff(2) == Complex(0.25, 0));
}

TEST_CASE("TrigPoly literal syntax") {
  const TrigPoly f = TrigPoly::parse("(1, 0.5, 0) (-1,0.5,0)  (3,0,-2)");
  CHECK(f.coeff(1) == Complex(0.5, 0));
  CHECK(f.coeff(3) == Complex(0, -2));
  CHECK(TrigPoly::parse(f.to_string()).coeffs() == f.coeffs());
  CHECK_THROWS_AS(TrigPoly::parse("(1,2)"), std::invalid_argument);
  CHECK_THROWS_AS(TrigPoly::parse("(a,1,0)"), std::invalid_argument);
  CHECK_THROWS_AS(TrigPoly::parse("1,2,3"), std::invalid_argument);
}

TEST_CASE("field CSV dump") {
  std::ostringstream os;
  write_field_csv(os, TrigPoly::constant(2.0), 2);
  CHECK(os.str() == "x,re,im\n0,2,0\n3.1415926535897931,2,0\n");
}

TEST_CASE("apply_generator examples") {
  CHECK(max_coeff_diff(apply_generator(1.0, TrigPoly::monomial(3)), TrigPoly::monomial(3, -3.0)) == 0.0);
  CHECK(apply_generator(1.3, TrigPoly::constant(4.0)).empty());
  CHECK(max_coeff_diff(apply_generator(0.5, TrigPoly::cosine(1)), TrigPoly::cosine(1, -1.0)) == 0.0);
}

TEST_CASE("carre_du_champ examples") {
  const TrigPoly e1 = TrigPoly::monomial(1);
  for (double g : {0.4, 1.0, 1.6}) {
    CHECK(max_coeff_diff(carre_du_champ(g, e1, e1), TrigPoly::constant(1.0)) <= 1e-15);
  }
  for (double g : {0.4, 1.0, 1.6}) {
    for (int n : {1, 2, 5}) {
      const TrigPoly f = TrigPoly::cosine(n);
      const double a = alpha_coeff(g);
      const double scale = std::pow(n, g) / 2;
      const TrigPoly want = TrigPoly::constant(scale) + TrigPoly::cosine(2 * n, scale * a);
      CHECK(max_coeff_diff(carre_du_champ(g, f, f), want) <= 1e-14 * scale);
    }
  }
  const TrigPoly cross = carre_du_champ(1.0, e1, TrigPoly::monomial(-1));
  CHECK(cross.coeff(2) == Complex(0, 0));
}

TEST_CASE("gamma2_definition examples") {
  for (double g : {0.3, 1.0, 1.8}) {
    CHECK(max_coeff_diff(gamma2_definition(g, TrigPoly::monomial(1)), TrigPoly::constant(1.0)) <= 1e-15);
    CHECK(gamma2_definition(g, TrigPoly::constant(3.0)).empty());
  }
  const TrigPoly f({{1, 1.0}, {2, 1.0}});
  CHECK(max_coeff_diff(gamma2_definition(1.0, f), gamma2_hadamard(1.0, f)) == 0.0);
}

TEST_CASE("gamma2_hadamard examples") {
  CHECK(max_coeff_diff(gamma2_hadamard(0.7, TrigPoly::monomial(1)), TrigPoly::constant(1.0)) <= 1e-15);
  CHECK(max_coeff_diff(gamma2_hadamard(1.0, TrigPoly::cosine(1)), TrigPoly::constant(0.5)) == 0.0);
}

TEST_CASE("Hadamard-square identity on random polynomials") {
  for (std::size_t i = 0; i < 300; ++i) {
    CounterRng rng(21, i);
    const double g = rng.uniform(0.05, 1.95);
    const TrigPoly f = random_trig_poly(rng, -8, 8, 8);
    REQUIRE(max_coeff_diff(gamma2_definition(g, f), gamma2_hadamard(g, f)) <= 1e-10);
  }
}

TEST_CASE("drift_apply examples") {
  const TrigPoly want({{0, 1.0}, {2, -1.0}});
  CHECK(max_coeff_diff(drift_apply(2.0, TrigPoly::monomial(1)), want) <= 1e-15);
  CHECK(drift_apply(1.0, TrigPoly::constant(5.0)).empty());
  CounterRng rng(22, 0);
  for (int k = 0; k < 20; ++k) {
    const TrigPoly f = random_real_poly(rng, 6);
    CHECK(drift_apply(0.8, f).is_real(1e-14));
  }
  CHECK_THROWS_AS(drift_apply(-1.0, TrigPoly::monomial(1)), std::domain_error);
}

TEST_CASE("drift_gamma2 examples") {
  CounterRng rng(23, 0);
  for (int k = 0; k < 10; ++k) {
    const TrigPoly f = random_trig_poly(rng, -6, 6, 6);
    CHECK(max_coeff_diff(drift_gamma2(1.4, 0.0, f), gamma2_definition(1.4, f)) == 0.0);
  }
  for (int k = 0; k < 30; ++k) {
    const int n = static_cast<int>(rng.integer(1, 12));
    const double w = rng.uniform(0.0, 3.0);
    const TrigPoly f = random_trig_poly(rng, 1, n, static_cast<std::size_t>(n));
    const TrigPoly lhs = drift_gamma2(1.0, w, f) - gamma2_definition(1.0, f);
    const TrigPoly rhs = TrigPoly::cosine(1, w / 2) * carre_du_champ(1.0, f, f);
    REQUIRE(max_coeff_diff(lhs, rhs) <= 1e-10);
  }
  const TrigPoly c = TrigPoly::cosine(1);
  const TrigPoly g2 = drift_gamma2(1.0, 1.0, c);
  const TrigPoly g1 = carre_du_champ(1.0, c, c);
  for (double x : x_grid(32)) {
    CHECK(g2.evaluate(x).real() / g1.evaluate(x).real() == doctest::Approx(1 + 0.5 * std::cos(x)).epsilon(1e-13));
  }
}

TEST_CASE("extract_D0 examples") {
  CounterRng rng(24, 0);
  for (int k = 0; k < 10; ++k) {
    const double w = rng.uniform(0.0, 2.0);
    const double x = rng.uniform(0.0, 2 * kPi);
    const auto dm = extract_D0(w, 6, x);
    CHECK(dm.max_deviation <= 1e-12);
    for (std::size_t n = 0; n < 6; ++n) {
      CHECK(dm.d0(n, n).real() == doctest::Approx(w * static_cast<double>(n + 1) / 2 * std::cos(x)).scale(1.0));
    }
  }
  const auto zero = extract_D0(0.0, 4, 1.1);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) CHECK(std::abs(zero.d0(i, j)) == 0.0);
  }
}

TEST_CASE("single_mode_ratio examples") {
  for (int n : {1, 2, 7}) {
    for (double x : {0.0, 0.4, 2.0}) CHECK(single_mode_ratio(1.0, n, x) == doctest::Approx(n));
  }
  const double a = 1 - std::pow(2.0, -0.5);
  CHECK(single_mode_ratio(0.5, 1, 0.0) == doctest::Approx((1 + a * a) / (1 + a)).epsilon(1e-15));
  CHECK(single_mode_ratio(0.5, 1, 0.0) == doctest::Approx(0.8398113794914796324).epsilon(1e-15));
  for (double g : {0.3, 0.9, 1.4, 1.9}) {
    for (int n : {1, 3}) {
      const TrigPoly f = TrigPoly::cosine(n);
      const TrigPoly g2 = gamma2_definition(g, f);
      const TrigPoly g1 = carre_du_champ(g, f, f);
      for (double x : x_grid(100)) {
        REQUIRE(std::fabs(single_mode_ratio(g, n, x) - g2.evaluate(x).real() / g1.evaluate(x).real()) <= 1e-10);
      }
    }
  }
}

TEST_CASE("drift_single_mode_ratio examples") {
  for (double x : x_grid(50)) {
    CHECK(drift_single_mode_ratio(1.0, 0.8, x) == doctest::Approx(1 + 0.4 * std::cos(x)).epsilon(1e-14));
    CHECK(drift_single_mode_ratio(1.6, 0.0, x) == doctest::Approx(single_mode_ratio(1.6, 1, x)).epsilon(1e-14));
  }
  CHECK(drift_single_mode_ratio(1.0, 0.8, kPi) == doctest::Approx(0.6));
  CHECK(drift_single_mode_ratio(1.3, 0.5, 1.0) == doctest::Approx(1.043028159391583574).epsilon(1e-14));
  const TrigPoly f = TrigPoly::cosine(1);
  const double oracle = drift_gamma2(1.3, 0.5, f).evaluate(1.0).real() /
                        carre_du_champ(1.3, f, f).evaluate(1.0).real();
  CHECK(std::fabs(oracle - drift_single_mode_ratio(1.3, 0.5, 1.0)) <= 1e-10);
}

TEST_CASE("matrix route agrees with the oracle pointwise") {
  for (std::size_t k = 0; k < 24; ++k) {
    CounterRng rng(25, k);
    const double g = rng.uniform(0.1, 1.9);
    const int n = static_cast<int>(rng.integer(1, 12));
    const TrigPoly f = random_trig_poly(rng, 1, n, static_cast<std::size_t>(n));
    const SymMatrix r = build_R(g / 2, static_cast<std::size_t>(n));
    const SymMatrix r2 = hadamard_power(r, 2);
    const TrigPoly g1 = carre_du_champ(g, f, f);
    const TrigPoly g2 = gamma2_definition(g, f);
    for (double x : x_grid(64)) {
      const auto v = phase_stripped(f, static_cast<std::size_t>(n), x);
      const double scale = std::max(1.0, f.norm_sq() * std::pow(n, 2 * g));
      REQUIRE(std::abs(g1.evaluate(x) - form(r, v)) <= 1e-10 * scale);
      REQUIRE(std::abs(g2.evaluate(x) - form(r2, v)) <= 1e-10 * scale);
    }
  }
}

TEST_CASE("real polynomials give real fields") {
  for (std::size_t k = 0; k < 30; ++k) {
    CounterRng rng(26, k);
    const double g = rng.uniform(0.1, 1.9);
    const double w = rng.uniform(0.0, 2.0);
    const TrigPoly f = random_real_poly(rng, static_cast<int>(rng.integer(1, 6)));
    for (const TrigPoly& field : {carre_du_champ(g, f, f), gamma2_definition(g, f), drift_gamma2(g, w, f)}) {
      const double scale = std::max(1.0, field.max_abs_coeff());
      for (double x : x_grid(64)) REQUIRE(std::fabs(field.evaluate(x).imag()) <= 1e-12 * scale * 32);
    }
  }
}

TEST_CASE("drift never couples positive and negative frequencies at gamma = 1") {
  for (std::size_t k = 0; k < 20; ++k) {
    CounterRng rng(27, k);
    const double w = rng.uniform(0.1, 2.0);
    const TrigPoly f = random_trig_poly(rng, 1, 6, 6);
    const TrigPoly h = random_trig_poly(rng, -6, -1, 6);
    const TrigPoly coupling = carre_du_champ(1.0, f, drift_apply(w, h)) +
                              carre_du_champ(1.0, drift_apply(w, h), f) +
                              carre_du_champ(1.0, h, drift_apply(w, f)) +
                              carre_du_champ(1.0, drift_apply(w, f), h);
    REQUIRE(coupling.max_abs_coeff() <= 1e-12);
  }
}

TEST_CASE("Gamma2 of real polynomials is nonnegative") {
  for (std::size_t k = 0; k < 40; ++k) {
    CounterRng rng(28, k);
    const double g = rng.uniform(0.05, 1.95);
    const TrigPoly f = random_real_poly(rng, static_cast<int>(rng.integer(1, 8)));
    const TrigPoly g2 = gamma2_definition(g, f);
    double lowest = 0.0;
    for (double x : x_grid(64)) lowest = std::min(lowest, g2.evaluate(x).real());
    REQUIRE(lowest >= -1e-10 * f.norm_sq());
  }
}
