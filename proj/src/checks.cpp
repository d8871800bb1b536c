#include "stablecurv/checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>

#include "stablecurv/curvature.hpp"
#include "stablecurv/eigensolve.hpp"
#include "stablecurv/errors.hpp"
#include "stablecurv/gamma_oracle.hpp"
#include "stablecurv/kernels.hpp"
#include "stablecurv/matrices.hpp"
#include "stablecurv/parallel.hpp"

namespace stablecurv {

namespace {

struct Outcome {
  bool ok;
  std::string detail;
  bool expect_ok = true;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::string fixed(double v, int digits = 6) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

constexpr double kPi = std::numbers::pi;

Outcome check_kernels(const CheckParams&) {
  double sym = 0.0, corr = 0.0;
  for (double g = 0.1; g < 1.95; g += 0.1) {
    const StableParams p(g);
    for (int xi = -50; xi <= 50; ++xi) {
      for (int eta = -50; eta <= 50; ++eta) {
        sym = std::max(sym, std::fabs(psi(p, xi, eta) - psi(p, eta, xi)));
        if (xi > 0 && eta > 0) {
          const double a = psi(p, xi, eta);
          corr = std::max(corr, std::fabs(a - fbm_covariance(p.hurst(), xi, eta)) /
                                    std::max(1.0, std::fabs(a)));
        }
      }
    }
  }
  bool coeff_zero_only_at_one = alpha_coeff(1.0) == 0.0 && beta_coeff(1.0) == 0.0;
  for (int k = 1; k < 2000; ++k) {
    const double g = k * 1e-3;
    if (k == 1000) continue;
    if (alpha_coeff(g) == 0.0 || beta_coeff(g) == 0.0) coeff_zero_only_at_one = false;
  }
  double min_eig = 0.0;
  for (double g : {0.2, 0.7, 1.0, 1.4, 1.9}) {
    const StableParams p(g);
    const auto k = SymMatrix::generate(50, [&](std::size_t i, std::size_t j) {
      return psi(p, static_cast<double>(i + 1), static_cast<double>(j + 1));
    });
    min_eig = std::min(min_eig, sym_eigen(k).values.front());
  }
  const bool ok = sym == 0.0 && corr <= 1e-14 && coeff_zero_only_at_one && min_eig >= -1e-10;
  return {ok, "asymmetry " + sci(sym) + ", psi/fbm gap " + sci(corr) +
                  ", min eigenvalue " + sci(min_eig)};
}

Outcome check_odd_spectrum(const CheckParams& prm) {
  const std::size_t n_max = prm.n.value_or(50);
  double worst = 0.0;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const SymMatrix r = build_R(0.5, n);
    const auto s = gen_eigen_spd(hadamard_power(r, 2), r);
    for (std::size_t k = 0; k < n; ++k) {
      const double expected = static_cast<double>(2 * k + 1);
      worst = std::max(worst, std::fabs(s.values[k] - expected) / expected);
    }
  }
  return {worst <= 1e-9, "N=1.." + std::to_string(n_max) + ", max relative error " + sci(worst)};
}

Outcome check_exact_matrix(const CheckParams& prm) {
  const std::size_t n_max = prm.n.value_or(100);
  double worst = 0.0;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const ExactCurvatureMatrix m = build_M_exact(n);
    const SymMatrix r = build_R(0.5, n);
    const Matrix f = inverse_times(r, hadamard_power(r, 2));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        worst = std::max(worst, std::fabs(f(i, j) - static_cast<double>(m(i, j))));
      }
    }
  }
  return {worst <= 1e-10, "N=1.." + std::to_string(n_max) + ", max entry gap " + sci(worst)};
}

Outcome check_plateau(const CheckParams& prm) {
  const std::size_t n = prm.n.value_or(300);
  const double k15 = kappa(1.5, n, {.with_vector = false, .with_z_matrix = false}).kappa;
  const double k18 = kappa(1.8, n, {.with_vector = false, .with_z_matrix = false}).kappa;
  const bool ok = std::fabs(k15 - 0.899) <= 0.005 && std::fabs(k18 - 0.594) <= 0.005;
  return {ok, "kappa(1.5," + std::to_string(n) + ")=" + fixed(k15) + ", kappa(1.8," +
                  std::to_string(n) + ")=" + fixed(k18)};
}

Outcome check_lower_bound(const CheckParams& prm) {
  std::vector<double> gammas{0.2, 0.4, 0.6, 0.8, 1.0};
  if (prm.gamma) {
    if (*prm.gamma > 1.0) throw std::invalid_argument("the ½ bound is only claimed for γ ≤ 1");
    gammas = {*prm.gamma};
  }
  const std::size_t n_max = prm.n.value_or(200);
  double lowest = 1.0;
  for (double g : gammas) {
    for (const auto& rep : kappa_sequence(g, std::max<std::size_t>(n_max, 2), prm.threads)) {
      if (rep.n <= n_max) lowest = std::min(lowest, rep.kappa);
    }
  }
  return {lowest >= 0.5 - 1e-9, "min kappa over grid, N<=" + std::to_string(n_max) + ": " +
                                    fixed(lowest, 9)};
}

Outcome check_z_matrix(const CheckParams& prm) {
  if (prm.hurst) {
    const double h = *prm.hurst;
    const bool predicted = h <= 0.5;
    const std::size_t n = prm.n.value_or(predicted ? 200 : 10);
    const std::vector<double> grid{h};
    const auto rows = zmatrix_scan(grid, n, predicted, prm.threads);
    double worst = -std::numeric_limits<double>::infinity();
    bool all_pass = true;
    for (const auto& r : rows) {
      worst = std::max(worst, r.max_offdiag);
      all_pass = all_pass && r.pass;
    }
    return {all_pass, "H=" + fixed(h, 3) + ", N=" + std::to_string(n) +
                          ", max off-diagonal " + sci(worst),
            predicted};
  }
  std::vector<double> low;
  for (int k = 1; k <= 10; ++k) low.push_back(0.05 * k);
  const std::size_t n = prm.n.value_or(200);
  double worst_low = -std::numeric_limits<double>::infinity();
  bool low_pass = true;
  for (const auto& r : zmatrix_scan(low, n, true, prm.threads)) {
    worst_low = std::max(worst_low, r.max_offdiag);
    low_pass = low_pass && r.pass;
  }
  const std::vector<double> high{0.6, 0.7, 0.8};
  bool high_fail = true;
  double least_high = std::numeric_limits<double>::infinity();
  for (const auto& r : zmatrix_scan(high, 10, false, prm.threads)) {
    least_high = std::min(least_high, r.max_offdiag);
    high_fail = high_fail && !r.pass;
  }
  return {low_pass && high_fail,
          "H<=0.5, N<=" + std::to_string(n) + ": max off-diagonal " + sci(worst_low) +
              "; H in {0.6,0.7,0.8}, N=10: smallest max off-diagonal " + sci(least_high)};
}

Outcome check_perron(const CheckParams& prm) {
  const std::size_t n = prm.n.value_or(50);
  if (prm.hurst) {
    const auto r = perron_check(*prm.hurst, n);
    return {r.nonnegative, std::to_string(r.sign_changes) + " negative entries", *prm.hurst <= 0.5};
  }
  bool low_ok = true;
  for (double h : {0.1, 0.2, 0.3, 0.4, 0.5}) low_ok = low_ok && perron_check(h, n).nonnegative;
  const auto high = perron_check(0.9, n);
  return {low_ok && high.sign_changes >= 1,
          "H<=0.5 nonnegative: " + std::string(low_ok ? "yes" : "no") + ", H=0.9 negative entries: " +
              std::to_string(high.sign_changes)};
}

Outcome check_monotone_decay(const CheckParams& prm) {
  std::vector<double> gammas{0.5, 1.5, 1.8};
  if (prm.gamma) gammas = {*prm.gamma};
  const std::size_t n_hi = prm.n.value_or(300);
  const std::size_t n_lo = std::max<std::size_t>(2, n_hi / 10);
  bool ok = true;
  std::string detail;
  for (double g : gammas) {
    const auto seq = kappa_sequence(g, n_hi, prm.threads);
    double most_negative = std::numeric_limits<double>::infinity();
    for (const auto& r : seq) {
      if (r.decrement) most_negative = std::min(most_negative, *r.decrement);
    }
    ok = ok && most_negative >= -1e-10;
    if (!detail.empty()) detail += "; ";
    detail += "gamma=" + fixed(g, 2) + " min decrement " + sci(most_negative);
    if (g == 1.0) continue;
    const double p = decay_exponent_fit(seq, n_lo, n_hi);
    ok = ok && p > 2.0;
    detail += ", exponent " + fixed(p, 4);
  }
  return {ok, detail};
}

Outcome check_quadratic(const CheckParams& prm) {
  const std::size_t n = prm.n.value_or(200);
  const auto grid = default_quadratic_grid();
  const double right = quadratic_fit_c(grid, n, Side::right, prm.threads);
  const double left = quadratic_fit_c(grid, n, Side::left, prm.threads);
  const bool ok = right >= 0.24 && right <= 0.30 && left >= 0.20 && left <= 0.34;
  return {ok, "c right " + fixed(right, 5) + ", c left " + fixed(left, 5)};
}

Outcome check_hadamard(const CheckParams& prm) {
  constexpr std::size_t kCases = 200;
  const auto diffs = parallel_map(
      kCases,
      [&](std::size_t i) {
        CounterRng rng(prm.seed, i);
        const double g = rng.uniform(0.05, 1.95);
        const TrigPoly f = random_trig_poly(rng, -8, 8, 8);
        return max_coeff_diff(gamma2_definition(g, f), gamma2_hadamard(g, f));
      },
      prm.threads);
  const double worst = *std::max_element(diffs.begin(), diffs.end());
  return {worst <= 1e-10, std::to_string(kCases) + " cases, max coefficient gap " + sci(worst)};
}

Outcome check_cross_sign(const CheckParams& prm) {
  std::vector<double> gammas{1.0, 0.5, 1.5};
  if (prm.gamma) gammas = {*prm.gamma};
  const long n_max = static_cast<long>(prm.n.value_or(50));
  bool ok = true;
  std::string detail;
  for (double g : gammas) {
    const StableParams p(g);
    const SignClass predicted =
        g == 1.0 ? SignClass::zero : (g < 1.0 ? SignClass::positive : SignClass::negative);
    std::size_t mismatches = 0;
    double largest = 0.0;
    for (long n = 1; n <= n_max; ++n) {
      for (long m = 1; m <= n_max; ++m) {
        const auto cs = cross_sign(p, n, m);
        largest = std::max(largest, std::fabs(cs.value));
        const bool exact = predicted != SignClass::zero || cs.value == 0.0;
        if (cs.sign_class != predicted || !exact) ++mismatches;
      }
    }
    ok = ok && mismatches == 0;
    if (!detail.empty()) detail += "; ";
    detail += "gamma=" + fixed(g, 3) + " " + to_string(predicted) + ", mismatches " +
              std::to_string(mismatches) + ", max |value| " + sci(largest);
  }
  return {ok, detail};
}

Outcome check_single_mode(const CheckParams&) {
  const auto grid = x_grid(100);
  double worst = 0.0;
  double kappa1_gap = 0.0;
  for (double g : {0.5, 1.0, 1.3, 1.7}) {
    for (double w : {0.0, 0.5, 1.5}) {
      const TrigPoly f = TrigPoly::cosine(1);
      const TrigPoly g2 = drift_gamma2(g, w, f);
      const TrigPoly g1 = carre_du_champ(g, f, f);
      for (double x : grid) {
        const double oracle = g2.evaluate(x).real() / g1.evaluate(x).real();
        worst = std::max(worst, std::fabs(oracle - drift_single_mode_ratio(g, w, x)));
      }
    }
    for (int n = 1; n <= 3; ++n) {
      const TrigPoly f = TrigPoly::cosine(n);
      const TrigPoly g2 = gamma2_definition(g, f);
      const TrigPoly g1 = carre_du_champ(g, f, f);
      for (double x : grid) {
        const double oracle = g2.evaluate(x).real() / g1.evaluate(x).real();
        worst = std::max(worst, std::fabs(oracle - single_mode_ratio(g, n, x)));
      }
    }
    double lowest = std::numeric_limits<double>::infinity();
    for (double x : grid) lowest = std::min(lowest, single_mode_ratio(g, 1, x));
    kappa1_gap = std::max(kappa1_gap, std::fabs(lowest - single_mode_kappa(g)));
  }
  return {worst <= 1e-10 && kappa1_gap <= 1e-10,
          "max closed-form gap " + sci(worst) + ", kappa1 gap " + sci(kappa1_gap)};
}

Outcome check_drift(const CheckParams& prm) {
  const std::size_t n_max = prm.n.value_or(20);
  const auto deviations = parallel_map(
      n_max,
      [&](std::size_t i) {
        CounterRng rng(prm.seed, 1000 + i);
        const double w = rng.uniform(0.0, 2.0);
        const double x = rng.uniform(0.0, 2.0 * kPi);
        return extract_D0(w, i + 1, x).max_deviation;
      },
      prm.threads);
  const double d0_dev = *std::max_element(deviations.begin(), deviations.end());

  double shift_dev = 0.0;
  for (std::size_t n : {2, 5, 10, 20}) {
    for (std::size_t k = 0; k < 20; ++k) {
      CounterRng rng(prm.seed, 2000 + 100 * n + k);
      const double w = rng.uniform(0.0, 2.0);
      const double x = rng.uniform(0.0, 2.0 * kPi);
      shift_dev = std::max(shift_dev, drift_spectrum(w, n, x, 1).max_shift_deviation);
    }
  }

  double scalar_dev = 0.0;
  for (std::size_t k = 0; k < 20; ++k) {
    CounterRng rng(prm.seed, 3000 + k);
    const int degree = static_cast<int>(rng.integer(1, 12));
    const double w = rng.uniform(0.0, 2.0);
    const TrigPoly f = random_trig_poly(rng, 1, degree, static_cast<std::size_t>(degree));
    const TrigPoly expected = TrigPoly::cosine(1, 0.5 * w) * carre_du_champ(1.0, f, f);
    scalar_dev = std::max(scalar_dev, max_coeff_diff(drift_correction(1.0, w, f), expected));
  }

  double global_dev = 0.0;
  for (double w : {0.5, 1.0, 1.9}) {
    const auto rep = drift_spectrum(w, 5, kPi);
    global_dev = std::max(global_dev, std::fabs(rep.global_kappa - (1.0 - 0.5 * w)));
  }
  const bool ok = d0_dev <= 1e-12 && shift_dev <= 1e-9 && scalar_dev <= 1e-10 && global_dev <= 1e-6;
  return {ok, "D0 deviation " + sci(d0_dev) + ", shift deviation " + sci(shift_dev) +
                  ", scalar identity gap " + sci(scalar_dev) + ", global kappa gap " +
                  sci(global_dev)};
}

Outcome check_real_curvature(const CheckParams& prm) {
  const std::size_t n = prm.n.value_or(10);
  RealCurvatureOptions opts;
  opts.seed = prm.seed;
  const auto rc = real_curvature(1.0, n, opts);
  const double one_mode_half = real_curvature(0.5, 1, opts).constrained_kappa;
  const double one_mode_three_halves = real_curvature(1.5, 1, opts).constrained_kappa;
  const double k1_gap = std::max(std::fabs(one_mode_half - single_mode_kappa(0.5)),
                                 std::fabs(one_mode_three_halves - single_mode_kappa(1.5)));
  const bool ok = std::fabs(rc.pencil_kappa - 1.0) <= 1e-6 &&
                  std::fabs(rc.constrained_kappa - 1.0) <= 1e-6 && k1_gap <= 1e-8;
  return {ok, "gamma=1 N=" + std::to_string(n) + ": pencil " + fixed(rc.pencil_kappa, 10) +
                  ", constrained " + fixed(rc.constrained_kappa, 10) + "; N=1 kappa1 gap " +
                  sci(k1_gap)};
}

Outcome check_determinants(const CheckParams& prm) {
  const std::size_t n_max = prm.n.value_or(200);
  double logdet_dev = 0.0;
  for (std::size_t n = 1; n <= n_max; ++n) {
    logdet_dev = std::max(logdet_dev, std::fabs(log_det(build_R(0.5, n))));
  }
  bool integer_match = true;
  double volume_dev = 0.0;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const double v = contraction_profile(n).volume_ratio_log;
    if (n <= kMaxExactDoubleFactorial) {
      const ExactCurvatureMatrix m = build_M_exact(n);
      std::uint64_t diag = 1;
      for (std::size_t k = 0; k < n; ++k) diag *= static_cast<std::uint64_t>(m(k, k));
      integer_match = integer_match && diag == double_factorial_odd(n);
      volume_dev = std::max(volume_dev,
                            std::fabs(v - 0.5 * std::log(static_cast<double>(diag))));
    } else {
      // (2N−1)!! = (2N)! / (2^N N!)
      const double nd = static_cast<double>(n);
      const double ref =
          0.5 * (std::lgamma(2.0 * nd + 1.0) - nd * std::numbers::ln2 - std::lgamma(nd + 1.0));
      volume_dev = std::max(volume_dev, std::fabs(v - ref));
    }
  }
  const double stirling = contraction_profile(1000).stirling_ratio;
  const bool ok = logdet_dev <= 1e-10 && integer_match && volume_dev <= 1e-10 &&
                  std::fabs(stirling - 1.0) <= 0.05;
  return {ok, "max |log det| " + sci(logdet_dev) + ", volume gap " + sci(volume_dev) +
                  ", integer double factorial " + (integer_match ? "match" : "mismatch") +
                  ", Stirling ratio N=1000 " + fixed(stirling, 6)};
}

struct NamedCheck {
  const char* name;
  Outcome (*run)(const CheckParams&);
};

constexpr NamedCheck kChecks[] = {
    {"kernels", check_kernels},
    {"odd-spectrum", check_odd_spectrum},
    {"exact-matrix", check_exact_matrix},
    {"plateau", check_plateau},
    {"lower-bound", check_lower_bound},
    {"z-matrix", check_z_matrix},
    {"perron", check_perron},
    {"monotone-decay", check_monotone_decay},
    {"quadratic-c", check_quadratic},
    {"hadamard-square", check_hadamard},
    {"cross-sign", check_cross_sign},
    {"single-mode", check_single_mode},
    {"drift-identity", check_drift},
    {"real-curvature", check_real_curvature},
    {"determinants", check_determinants},
};

}  // namespace

const char* to_string(CheckStatus s) noexcept {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::expected_fail: return "expected-fail";
    case CheckStatus::unexpected_pass: return "unexpected-pass";
  }
  return "?";
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& c : kChecks) v.emplace_back(c.name);
    return v;
  }();
  return names;
}

CheckResult run_check(std::string_view name, const CheckParams& params) {
  const auto it = std::find_if(std::begin(kChecks), std::end(kChecks),
                               [&](const NamedCheck& c) { return name == c.name; });
  if (it == std::end(kChecks)) {
    throw std::invalid_argument("unknown check: " + std::string(name));
  }
  const auto t0 = std::chrono::steady_clock::now();
  const Outcome o = it->run(params);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CheckStatus status;
  if (o.expect_ok) {
    status = o.ok ? CheckStatus::pass : CheckStatus::fail;
  } else {
    status = o.ok ? CheckStatus::unexpected_pass : CheckStatus::expected_fail;
  }
  return {it->name, status, o.detail, secs};
}

std::vector<ReportEntry> reproduction_report(std::uint64_t seed, unsigned threads) {
  std::vector<ReportEntry> out;
  auto near = [&](std::string claim, std::string where, double expected, double computed,
                  double tol) {
    out.push_back({std::move(claim), std::move(where), expected, computed, tol,
                   std::fabs(computed - expected) <= tol});
  };
  auto above = [&](std::string claim, std::string where, double bound, double computed,
                   double tol) {
    out.push_back({std::move(claim), std::move(where), bound, computed, tol,
                   computed >= bound - tol});
  };
  const KappaOptions light{.with_vector = false, .with_z_matrix = false};

  near("psi(0.5; 1, 2)", "carre du champ kernel", 1.0 / std::numbers::sqrt2,
       psi(StableParams(0.5), 1, 2), 1e-12);
  near("alpha(1)", "single-mode coefficient", 0.0, alpha_coeff(1.0), 0.0);
  near("beta(1)", "drift single-mode coefficient", 0.0, beta_coeff(1.0), 0.0);
  {
    double largest = 0.0;
    const StableParams p(1.0);
    for (long n = 1; n <= 50; ++n) {
      for (long m = 1; m <= 50; ++m) largest = std::max(largest, std::fabs(cross_sign(p, n, m).value));
    }
    near("cross-sign kernel vanishes at gamma=1", "cross-sign trichotomy", 0.0, largest, 0.0);
  }
  near("kappa(1,25)", "odd-integer spectrum", 1.0, kappa(1.0, 25, light).kappa, 1e-9);
  {
    const SymMatrix r = build_R(0.5, 50);
    const auto s = gen_eigen_spd(hadamard_power(r, 2), r);
    double worst = 0.0;
    for (std::size_t k = 0; k < 50; ++k) {
      const double e = static_cast<double>(2 * k + 1);
      worst = std::max(worst, std::fabs(s.values[k] - e) / e);
    }
    near("odd spectrum N=50", "odd-integer spectrum", 0.0, worst, 1e-9);
  }
  near("kappa(1.5) limit", "numerical plateau", 0.899, kappa(1.5, 300, light).kappa, 0.005);
  near("kappa(1.8) limit", "numerical plateau", 0.594, kappa(1.8, 300, light).kappa, 0.005);
  near("quadratic coefficient c", "behaviour near gamma=1", 0.267,
       quadratic_fit_c(default_quadratic_grid(), 200, Side::right, threads), 0.03);
  for (double g : {0.5, 1.5, 1.8}) {
    above("decay exponent gamma=" + fixed(g, 1), "decrement decay", 2.0,
          decay_exponent_fit(g, 30, 300, threads), 0.0);
  }
  {
    double lowest = 1.0;
    for (double g : {0.2, 0.4, 0.6, 0.8, 1.0}) {
      for (const auto& r : kappa_sequence(g, 200, threads)) lowest = std::min(lowest, r.kappa);
    }
    above("kappa >= 1/2 for gamma <= 1, N <= 200", "lower bound", 0.5, lowest, 1e-9);
  }
  {
    std::vector<double> hs;
    for (int k = 1; k <= 10; ++k) hs.push_back(0.05 * k);
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& r : zmatrix_scan(hs, 200, false, threads)) worst = std::max(worst, r.max_offdiag);
    out.push_back({"max off-diagonal of R^-1 R^2, H <= 1/2, N=200", "Z-matrix structure", 0.0,
                   worst, kZMatrixTol, worst <= kZMatrixTol});
  }
  near("global drift kappa omega^2=1", "cosine drift", 0.5, drift_spectrum(1.0, 20, kPi).global_kappa,
       1e-6);
  {
    RealCurvatureOptions opts;
    opts.seed = seed;
    const auto rc = real_curvature(1.0, 10, opts);
    near("real-polynomial pencil kappa(1,10)", "real polynomials", 1.0, rc.pencil_kappa, 1e-6);
    near("real-polynomial constrained kappa(1,10)", "real polynomials", 1.0, rc.constrained_kappa,
         1e-6);
  }
  near("kappa1(1)", "single-mode curvature", 1.0, single_mode_kappa(1.0), 0.0);
  near("log det R_1/2, N=200", "unit determinant", 0.0, log_det(build_R(0.5, 200)), 1e-10);
  near("volume ratio log N=3", "volume ratio", 0.5 * std::log(15.0),
       contraction_profile(3).volume_ratio_log, 1e-12);
  near("Stirling ratio N=1000", "contraction rates", 1.0, contraction_profile(1000).stirling_ratio,
       0.05);
  {
    double worst = 0.0;
    for (std::size_t i = 0; i < 200; ++i) {
      CounterRng rng(seed, i);
      const double g = rng.uniform(0.05, 1.95);
      const TrigPoly f = random_trig_poly(rng, -8, 8, 8);
      worst = std::max(worst, max_coeff_diff(gamma2_definition(g, f), gamma2_hadamard(g, f)));
    }
    near("Hadamard-square identity, 200 random cases", "iterated carre du champ", 0.0, worst, 1e-10);
  }
  return out;
}

TrigPoly random_trig_poly(CounterRng& rng, int lo, int hi, std::size_t max_terms) {
  const auto terms = static_cast<std::size_t>(rng.integer(1, static_cast<long>(max_terms)));
  std::map<int, Complex> coeffs;
  for (std::size_t k = 0; k < terms; ++k) {
    const int freq = static_cast<int>(rng.integer(lo, hi));
    const double re = rng.normal();
    const double im = rng.normal();
    coeffs[freq] = Complex(re, im);
  }
  return TrigPoly(std::move(coeffs));
}

TrigPoly random_real_poly(CounterRng& rng, int degree) {
  std::map<int, Complex> coeffs;
  coeffs[0] = rng.normal();
  for (int n = 1; n <= degree; ++n) {
    const double re = rng.normal();
    const double im = rng.normal();
    coeffs[n] = Complex(re, im);
    coeffs[-n] = Complex(re, -im);
  }
  return TrigPoly(std::move(coeffs));
}

}  // namespace stablecurv
