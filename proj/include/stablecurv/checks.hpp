#pragma once

// Named verification checks shared by the `verify` and `report` commands.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stablecurv/random.hpp"
#include "stablecurv/trig_poly.hpp"

namespace stablecurv {

struct CheckParams {
  std::optional<double> gamma;
  std::optional<double> hurst;
  std::optional<std::size_t> n;
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 0;
};

enum class CheckStatus { pass, fail, expected_fail, unexpected_pass };

const char* to_string(CheckStatus s) noexcept;
inline bool counts_as_failure(CheckStatus s) noexcept {
  return s == CheckStatus::fail || s == CheckStatus::unexpected_pass;
}

struct CheckResult {
  std::string name;
  CheckStatus status;
  std::string detail;
  double seconds;
};

/// Names accepted by run_check, in suite order.
const std::vector<std::string>& check_names();

/// Throws std::invalid_argument for an unknown name.
CheckResult run_check(std::string_view name, const CheckParams& params);

struct ReportEntry {
  std::string claim;
  std::string location;
  double expected;
  double computed;
  double tolerance;
  bool pass;
};

/// Recomputes every headline number with its tolerance.
std::vector<ReportEntry> reproduction_report(std::uint64_t seed, unsigned threads = 0);

/// Random polynomial with 1..max_terms terms at frequencies in [lo, hi]
/// and standard normal real and imaginary parts.
TrigPoly random_trig_poly(CounterRng& rng, int lo, int hi, std::size_t max_terms);
/// Real-valued polynomial of degree ≤ degree (a_{−n} = conj(a_n)).
TrigPoly random_real_poly(CounterRng& rng, int degree);

}  // namespace stablecurv
