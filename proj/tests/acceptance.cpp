// Acceptance suite: one PASS/FAIL line per criterion, each with its runtime
// budget. Exit status is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "stablecurv/checks.hpp"
#include "stablecurv/curvature.hpp"
#include "stablecurv/eigensolve.hpp"
#include "stablecurv/gamma_oracle.hpp"
#include "stablecurv/kernels.hpp"
#include "stablecurv/matrices.hpp"
#include "stablecurv/random.hpp"

using namespace stablecurv;

namespace {

constexpr double kPi = std::numbers::pi;
const KappaOptions kLight{.with_vector = false, .with_z_matrix = false};

struct Verdict {
  bool ok;
  std::string detail;
};

std::string num(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

int failures = 0;

void criterion(int id, const char* name, double budget_s, const std::function<Verdict()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v{false, ""};
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_budget = secs < budget_s;
  const bool pass = v.ok && in_budget;
  if (!pass) ++failures;
  std::printf("[%s] %2d %-28s %s (%.2f s of %.0f s)%s\n", pass ? "PASS" : "FAIL", id, name,
              v.detail.c_str(), secs, budget_s, in_budget ? "" : " over budget");
  std::fflush(stdout);
}

}  // namespace

int main() {
  criterion(1, "odd-integer spectrum", 5, [] {
    double worst = 0.0;
    for (std::size_t n = 1; n <= 50; ++n) {
      const SymMatrix r = build_R(0.5, n);
      const auto s = gen_eigen_spd(hadamard_power(r, 2), r);
      for (std::size_t k = 0; k < n; ++k) {
        const double e = static_cast<double>(2 * k + 1);
        worst = std::max(worst, std::fabs(s.values[k] - e) / e);
      }
    }
    return Verdict{worst <= 1e-9, "max relative error " + num("%.2e", worst)};
  });

  criterion(2, "exact curvature matrix", 10, [] {
    double worst = 0.0;
    for (std::size_t n = 1; n <= 100; ++n) {
      const auto m = build_M_exact(n);
      const SymMatrix r = build_R(0.5, n);
      const Matrix f = inverse_times(r, hadamard_power(r, 2));
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          worst = std::max(worst, std::fabs(f(i, j) - static_cast<double>(m(i, j))));
        }
      }
    }
    return Verdict{worst <= 1e-10, "max entry gap " + num("%.2e", worst)};
  });

  criterion(3, "curvature plateau values", 120, [] {
    const double k15 = kappa(1.5, 300, kLight).kappa;
    const double k18 = kappa(1.8, 300, kLight).kappa;
    return Verdict{std::fabs(k15 - 0.899) <= 0.005 && std::fabs(k18 - 0.594) <= 0.005,
                   "kappa(1.5,300)=" + num("%.6f", k15) + " kappa(1.8,300)=" + num("%.6f", k18)};
  });

  criterion(4, "lower bound 1/2", 300, [] {
    double lowest = std::numeric_limits<double>::infinity();
    for (double g : {0.2, 0.4, 0.6, 0.8, 1.0}) {
      for (const auto& r : kappa_sequence(g, 200)) lowest = std::min(lowest, r.kappa);
    }
    return Verdict{lowest >= 0.5 - 1e-9, "min kappa " + num("%.9f", lowest)};
  });

  criterion(5, "Z-matrix scan", 300, [] {
    std::vector<double> low;
    for (int k = 1; k <= 10; ++k) low.push_back(0.05 * k);
    double worst = -std::numeric_limits<double>::infinity();
    bool low_ok = true;
    for (const auto& r : zmatrix_scan(low, 200)) {
      worst = std::max(worst, r.max_offdiag);
      low_ok = low_ok && r.pass;
    }
    const std::vector<double> high{0.6, 0.7, 0.8};
    bool high_fails = true;
    for (const auto& r : zmatrix_scan(high, 10, false)) high_fails = high_fails && !r.pass;
    return Verdict{low_ok && high_fails, "H<=0.5 max off-diagonal " + num("%.2e", worst) +
                                             ", H>0.5 expected-fail " +
                                             (high_fails ? "detected" : "missed")};
  });

  criterion(6, "Perron structure", 10, [] {
    bool low_ok = true;
    for (int k = 1; k <= 10; ++k) low_ok = low_ok && perron_check(0.05 * k, 50).nonnegative;
    const auto high = perron_check(0.9, 50);
    return Verdict{low_ok && high.sign_changes >= 1,
                   std::string("H<=0.5 nonnegative ") + (low_ok ? "yes" : "no") +
                       ", H=0.9 negative entries " + std::to_string(high.sign_changes)};
  });

  criterion(7, "monotonicity and decay", 600, [] {
    bool ok = true;
    std::string detail;
    for (double g : {0.5, 1.5, 1.8}) {
      const auto seq = kappa_sequence(g, 300);
      for (const auto& r : seq) {
        if (r.decrement) ok = ok && *r.decrement >= -1e-10;
      }
      const double p = decay_exponent_fit(seq, 30, 300);
      ok = ok && p > 2.0;
      detail += (detail.empty() ? "" : " ") + num("p(%.1f)=", g) + num("%.3f", p);
    }
    return Verdict{ok, detail};
  });

  criterion(8, "quadratic coefficient", 120, [] {
    const double c = quadratic_fit_c(default_quadratic_grid(), 200);
    return Verdict{c >= 0.24 && c <= 0.30, "c=" + num("%.5f", c)};
  });

  criterion(9, "Hadamard-square identity", 10, [] {
    double worst = 0.0;
    for (std::size_t i = 0; i < 200; ++i) {
      CounterRng rng(kDefaultSeed, i);
      const double g = rng.uniform(0.05, 1.95);
      const TrigPoly f = random_trig_poly(rng, -8, 8, 8);
      worst = std::max(worst, max_coeff_diff(gamma2_definition(g, f), gamma2_hadamard(g, f)));
    }
    return Verdict{worst <= 1e-10, "200 cases, max gap " + num("%.2e", worst)};
  });

  criterion(10, "cross-sign trichotomy", 1, [] {
    bool ok = true;
    for (long n = 1; n <= 50; ++n) {
      for (long m = 1; m <= 50; ++m) {
        const auto z = cross_sign(StableParams(1.0), n, m);
        ok = ok && z.value == 0.0 && z.sign_class == SignClass::zero;
        ok = ok && cross_sign(StableParams(0.5), n, m).value > 0.0;
        ok = ok && cross_sign(StableParams(1.5), n, m).value < 0.0;
      }
    }
    return Verdict{ok, "n,m <= 50"};
  });

  criterion(11, "single-mode formulas", 10, [] {
    const auto grid = x_grid(100);
    double worst = 0.0;
    for (double g : {0.5, 1.0, 1.3, 1.7}) {
      const TrigPoly f = TrigPoly::cosine(1);
      const TrigPoly g1 = carre_du_champ(g, f, f);
      const TrigPoly g2 = gamma2_definition(g, f);
      for (double x : grid) {
        worst = std::max(worst, std::fabs(single_mode_ratio(g, 1, x) -
                                          g2.evaluate(x).real() / g1.evaluate(x).real()));
      }
      for (double w : {0.0, 0.5, 1.5}) {
        const TrigPoly d2 = drift_gamma2(g, w, f);
        for (double x : grid) {
          worst = std::max(worst, std::fabs(drift_single_mode_ratio(g, w, x) -
                                            d2.evaluate(x).real() / g1.evaluate(x).real()));
        }
      }
    }
    return Verdict{worst <= 1e-10, "max pointwise gap " + num("%.2e", worst)};
  });

  criterion(12, "drift scalar identity", 30, [] {
    double d0 = 0.0;
    for (std::size_t n = 1; n <= 20; ++n) {
      for (std::size_t k = 0; k < 3; ++k) {
        CounterRng rng(kDefaultSeed, 100 * n + k);
        const double w = rng.uniform(0.0, 2.0);
        const double x = rng.uniform(0.0, 2 * kPi);
        d0 = std::max(d0, extract_D0(w, n, x).max_deviation);
      }
    }
    double shift = 0.0;
    double global = 0.0;
    for (double w : {0.5, 1.0, 1.9}) {
      for (double x : {0.0, 1.0, kPi, 5.0}) {
        shift = std::max(shift, drift_spectrum(w, 10, x, 1).max_shift_deviation);
      }
      global = std::max(global, std::fabs(drift_spectrum(w, 10, 0.0).global_kappa - (1 - w / 2)));
    }
    return Verdict{d0 <= 1e-12 && shift <= 1e-9 && global <= 1e-6,
                   "D0 " + num("%.2e", d0) + ", shift " + num("%.2e", shift) + ", global " +
                       num("%.2e", global)};
  });

  criterion(13, "real-polynomial curvature", 60, [] {
    const auto rc = real_curvature(1.0, 10);
    return Verdict{std::fabs(rc.pencil_kappa - 1) <= 1e-6 && std::fabs(rc.constrained_kappa - 1) <= 1e-6,
                   "pencil " + num("%.10f", rc.pencil_kappa) + ", constrained " +
                       num("%.10f", rc.constrained_kappa)};
  });

  criterion(14, "determinant identities", 10, [] {
    double logdet = 0.0;
    for (std::size_t n = 1; n <= 200; ++n) logdet = std::max(logdet, std::fabs(log_det(build_R(0.5, n))));
    bool exact = true;
    double volume = 0.0;
    for (std::size_t n = 1; n <= 200; ++n) {
      const double v = contraction_profile(n).volume_ratio_log;
      const double nd = static_cast<double>(n);
      double ref;
      if (n <= kMaxExactDoubleFactorial) {
        const auto m = build_M_exact(n);
        std::uint64_t diag = 1;
        for (std::size_t k = 0; k < n; ++k) diag *= static_cast<std::uint64_t>(m(k, k));
        exact = exact && diag == double_factorial_odd(n);
        ref = 0.5 * std::log(static_cast<double>(diag));
      } else {
        ref = 0.5 * (std::lgamma(2 * nd + 1) - nd * std::numbers::ln2 - std::lgamma(nd + 1));
      }
      volume = std::max(volume, std::fabs(v - ref));
    }
    const double st = contraction_profile(1000).stirling_ratio;
    return Verdict{logdet <= 1e-10 && exact && volume <= 1e-10 && std::fabs(st - 1) <= 0.05,
                   "log det " + num("%.2e", logdet) + ", volume gap " + num("%.2e", volume) +
                       ", Stirling " + num("%.6f", st)};
  });

  std::printf("%d of 14 criteria failed\n", failures);
  return failures;
}
