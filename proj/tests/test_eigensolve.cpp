#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "stablecurv/eigensolve.hpp"
#include "stablecurv/errors.hpp"
#include "stablecurv/kernels.hpp"
#include "stablecurv/random.hpp"

using namespace stablecurv;

namespace {

SymMatrix random_sym(CounterRng& rng, std::size_t n) {
  std::vector<double> v(n * n);
  for (double& x : v) x = rng.normal();
  return SymMatrix::from_rows(n, v);
}

double norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("sym_eigen examples") {
  CHECK(sym_eigen(SymMatrix::from_rows(3, {3, 0, 0, 0, 1, 0, 0, 0, 2})).values ==
        std::vector<double>{1, 2, 3});
  const auto s = sym_eigen(SymMatrix::from_rows(2, {0, 1, 1, 0}));
  CHECK(s.values[0] == doctest::Approx(-1.0));
  CHECK(s.values[1] == doctest::Approx(1.0));
  const auto r = sym_eigen(build_R(0.5, 3));
  CHECK(r.values[0] * r.values[1] * r.values[2] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(sym_eigen(SymMatrix::from_rows(1, {-4.5})).values[0] == -4.5);
}

TEST_CASE("sym_eigen vectors and residual") {
  CounterRng rng(11, 0);
  for (std::size_t n : {1, 2, 5, 17, 60}) {
    const SymMatrix a = random_sym(rng, n);
    const auto s = sym_eigen(a, true);
    REQUIRE(s.has_vectors());
    CHECK(std::is_sorted(s.values.begin(), s.values.end()));
    for (const auto& v : s.vectors) CHECK(norm(v) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(*s.residual <= 1e-10 * std::max(1.0, a.max_abs() * static_cast<double>(n)));
  }
}

TEST_CASE("QL and Jacobi agree for n <= 8") {
  CounterRng rng(12, 0);
  for (std::size_t n = 1; n <= 8; ++n) {
    for (int rep = 0; rep < 5; ++rep) {
      const SymMatrix a = random_sym(rng, n);
      const auto ql = sym_eigen(a);
      const auto jac = jacobi_eigen(a, true);
      for (std::size_t k = 0; k < n; ++k) CHECK(ql.values[k] == doctest::Approx(jac.values[k]).epsilon(1e-12));
      CHECK(*jac.residual <= 1e-10);
    }
  }
  CHECK_THROWS(jacobi_eigen(SymMatrix::identity(9)));
}

TEST_CASE("sym_eigen agrees with bisection on the characteristic polynomial") {
  CounterRng rng(13, 0);
  for (std::size_t n = 1; n <= 6; ++n) {
    for (int rep = 0; rep < 4; ++rep) {
      const SymMatrix a = random_sym(rng, n);
      const auto roots = oracle::eigenvalues_by_bisection(oracle::dense(a));
      const auto s = sym_eigen(a);
      REQUIRE(roots.size() == n);
      for (std::size_t k = 0; k < n; ++k) CHECK(std::fabs(roots[k] - s.values[k]) <= 1e-8);
    }
  }
}

TEST_CASE("gen_eigen_spd examples") {
  const SymMatrix b = build_R(0.35, 9);
  for (double v : gen_eigen_spd(b, b).values) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));

  for (std::size_t n = 1; n <= 50; ++n) {
    const SymMatrix r = build_R(0.5, n);
    const auto s = gen_eigen_spd(hadamard_power(r, 2), r);
    for (std::size_t k = 0; k < n; ++k) {
      REQUIRE(std::fabs(s.values[k] - static_cast<double>(2 * k + 1)) <= 1e-9);
    }
  }

  const double c = std::pow(2.0, 0.5);
  const auto a2 = SymMatrix::from_rows(2, {1, c * c, c * c, 4 * c * c});
  const auto b2 = SymMatrix::from_rows(2, {1, c, c, 2 * c});
  CHECK(gen_eigen_spd(a2, b2).values.front() < 1.0);
  CHECK_THROWS_AS(gen_eigen_spd(b2, SymMatrix::from_rows(2, {1, 2, 2, 1})), NotPositiveDefinite);
}

TEST_CASE("gen_eigen_spd residual contract") {
  for (double h : {0.2, 0.6, 0.9}) {
    const SymMatrix r = build_R(h, 40);
    const SymMatrix a = hadamard_power(r, 2);
    const auto s = gen_eigen_spd(a, r, true);
    for (std::size_t k = 0; k < s.values.size(); ++k) {
      const auto& v = s.vectors[k];
      double worst = 0.0;
      for (std::size_t i = 0; i < 40; ++i) {
        double av = 0.0, bv = 0.0;
        for (std::size_t j = 0; j < 40; ++j) {
          av += a(i, j) * v[j];
          bv += r(i, j) * v[j];
        }
        worst = std::max(worst, std::fabs(av - s.values[k] * bv));
      }
      CHECK(worst <= 1e-9 * (a.max_abs() * 40 + std::fabs(s.values[k]) * r.max_abs() * 40));
    }
    CHECK(pencil_residual(a, r, s) == doctest::Approx(*s.residual));
  }
}

TEST_CASE("generalized spectrum is invariant under congruence") {
  CounterRng rng(14, 0);
  for (std::size_t n : {2, 5, 10}) {
    const SymMatrix a = random_sym(rng, n);
    const SymMatrix b = build_R(0.3, n);
    Matrix p(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) p(i, j) = (i == j ? 3.0 : 0.0) + 0.3 * rng.normal();
    }
    auto congruent = [&](const SymMatrix& m) {
      Matrix pt(n, n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) pt(i, j) = p(j, i);
      }
      return SymMatrix::symmetrize(multiply(multiply(pt, m.to_dense()), p));
    };
    const auto s1 = gen_eigen_spd(a, b);
    const auto s2 = gen_eigen_spd(congruent(a), congruent(b));
    for (std::size_t k = 0; k < n; ++k) {
      CHECK(s1.values[k] == doctest::Approx(s2.values[k]).epsilon(1e-9).scale(1.0));
    }
  }
}

TEST_CASE("gen_eigen_psd examples") {
  const SymMatrix r = build_R(0.4, 12);
  const SymMatrix a = hadamard_power(r, 2);
  const auto spd = gen_eigen_spd(a, r);
  const auto psd = gen_eigen_psd(a, r);
  CHECK(psd.retained_dim == 12);
  for (std::size_t k = 0; k < 12; ++k) CHECK(psd.values[k] == doctest::Approx(spd.values[k]).epsilon(1e-9));

  CHECK_THROWS_AS(gen_eigen_psd(a, SymMatrix::zeros(12)), DegeneratePencil);

  const std::size_t n = 7;
  const StableParams p(1.0);
  auto freq = [n](std::size_t i) {
    return i < n ? static_cast<double>(i + 1) : -static_cast<double>(i - n + 1);
  };
  const auto k1 = SymMatrix::generate(2 * n, [&](std::size_t i, std::size_t j) {
    return psi(p, freq(i), freq(j));
  });
  const auto mixed = gen_eigen_psd(hadamard_power(k1, 2), k1);
  CHECK(mixed.retained_dim == 2 * n);
  CHECK(mixed.values.front() == doctest::Approx(1.0).epsilon(1e-9));

  // Rank-deficient B: only the retained directions are solved.
  const auto rank1 = SymMatrix::from_rows(2, {1, 1, 1, 1});
  const auto d = gen_eigen_psd(SymMatrix::identity(2), rank1);
  CHECK(d.retained_dim == 1);
  CHECK(d.values.front() == doctest::Approx(0.5));
}

TEST_CASE("eigensolves are deterministic") {
  const SymMatrix r = build_R(0.77, 80);
  const SymMatrix a = hadamard_power(r, 2);
  const auto s1 = gen_eigen_spd(a, r, true);
  const auto s2 = gen_eigen_spd(a, r, true);
  CHECK(s1.values == s2.values);
  CHECK(s1.vectors == s2.vectors);
}
