#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "stablecurv/random.hpp"

namespace stablecurv::cli {

enum class OutputFormat { csv, json };

struct RunConfig {
  std::string command;
  std::optional<double> gamma;
  std::string gamma_grid;
  std::optional<std::size_t> n;
  std::size_t n_max = 0;
  double omega_sq = 0.0;
  std::optional<double> hurst;
  std::string h_grid;
  std::size_t x_grid_size = 0;
  std::optional<double> x;
  OutputFormat format = OutputFormat::csv;
  std::string output_path;
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 0;
  bool quiet = false;
  // verify
  std::vector<std::string> only;
  // zmatrix
  bool final_only = false;
  // oracle
  std::string poly;
  std::string field = "gamma2";
  bool coefficients = false;
  std::size_t fuzz = 0;
};

/// "start:stop:step" (endpoints included within half a step) or a comma
/// separated list. Values are rounded to 12 significant digits so that
/// grid points such as 1.0 come out exact.
std::vector<double> parse_grid(std::string_view spec);

using Cell = std::variant<double, std::int64_t, std::string, bool, std::vector<double>>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// CSV: header, then one LF-terminated row per entry, doubles with 17
/// significant digits, vectors joined with ';'. JSON: array of objects with
/// keys in column order.
void write_table(std::ostream& out, const Table& t, OutputFormat format);

/// Entry point behind the `stablecurv` binary. Returns the process exit code:
/// 0 success, 1 configuration error, 2 solver failure; verify, report and
/// oracle fuzzing return the number of failed checks (capped at 125).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace stablecurv::cli
