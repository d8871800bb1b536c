#include "stablecurv/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "stablecurv/checks.hpp"
#include "stablecurv/curvature.hpp"
#include "stablecurv/eigensolve.hpp"
#include "stablecurv/errors.hpp"
#include "stablecurv/format.hpp"
#include "stablecurv/gamma_oracle.hpp"
#include "stablecurv/kernels.hpp"
#include "stablecurv/matrices.hpp"
#include "stablecurv/parallel.hpp"
#include "stablecurv/trig_poly.hpp"

namespace stablecurv::cli {

namespace {

using Clock = std::chrono::steady_clock;

double parse_number(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw std::invalid_argument("not a number: '" + std::string(s) + "'");
  }
  return v;
}

double round12(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  double out = v;
  std::from_chars(buf, res.ptr, out);
  return out;
}

int capped(std::size_t failures) { return static_cast<int>(std::min<std::size_t>(failures, 125)); }

std::string csv_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          return format_double(v);
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, std::string>) {
          if (v.find_first_of(",\"\n") == std::string::npos) return v;
          std::string q = "\"";
          for (char ch : v) {
            if (ch == '"') q += '"';
            q += ch;
          }
          return q + '"';
        } else {
          std::string s;
          for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) s += ';';
            s += format_double(v[i]);
          }
          return s;
        }
      },
      c);
}

nlohmann::ordered_json json_cell(const Cell& c) {
  auto num = [](double d) -> nlohmann::ordered_json {
    if (!std::isfinite(d)) return nullptr;
    return d;
  };
  return std::visit(
      [&](const auto& v) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          return num(v);
        } else if constexpr (std::is_same_v<T, std::vector<double>>) {
          auto arr = nlohmann::ordered_json::array();
          for (double d : v) arr.push_back(num(d));
          return arr;
        } else {
          return v;
        }
      },
      c);
}

class Progress {
 public:
  Progress(std::ostream& err, bool quiet, std::string tag)
      : err_(err), quiet_(quiet), tag_(std::move(tag)), start_(Clock::now()) {}

  void note(const std::string& msg) {
    if (!quiet_) err_ << '[' << tag_ << "] " << msg << '\n' << std::flush;
  }
  void done() {
    const double s = std::chrono::duration<double>(Clock::now() - start_).count();
    note("done in " + std::to_string(s) + " s");
  }

 private:
  std::ostream& err_;
  bool quiet_;
  std::string tag_;
  Clock::time_point start_;
};

std::int64_t as_int(std::size_t v) { return static_cast<std::int64_t>(v); }

int cmd_spectrum(const RunConfig& cfg, Table& t, std::ostream& err) {
  const StableParams p(*cfg.gamma);
  const std::size_t n = *cfg.n;
  Progress prog(err, cfg.quiet, "spectrum");
  prog.note("gamma=" + format_double(p.gamma()) + " N=" + std::to_string(n));
  const SymMatrix r = build_R(p.hurst(), n);
  const Spectrum s = gen_eigen_spd(hadamard_power(r, 2), r);
  t.columns = {"k", "value"};
  if (p.is_cauchy()) {
    t.columns.insert(t.columns.end(), {"expected", "deviation"});
  }
  double worst = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Cell> row{as_int(k + 1), s.values[k]};
    if (p.is_cauchy()) {
      const double e = static_cast<double>(2 * k + 1);
      const double dev = std::fabs(s.values[k] - e);
      worst = std::max(worst, dev);
      row.insert(row.end(), {e, dev});
    }
    t.rows.push_back(std::move(row));
  }
  if (p.is_cauchy()) prog.note("max deviation from odd integers " + format_double(worst));
  prog.done();
  return 0;
}

int cmd_landscape(const RunConfig& cfg, Table& t, std::ostream& err) {
  const auto grid = parse_grid(cfg.gamma_grid);
  const std::size_t n = cfg.n.value_or(200);
  Progress prog(err, cfg.quiet, "landscape");
  prog.note(std::to_string(grid.size()) + " gamma values, N=" + std::to_string(n));
  const auto rows = landscape(grid, n, cfg.threads);
  t.columns = {"gamma", "n", "kappa", "kappa_single_mode"};
  for (const auto& r : rows) t.rows.push_back({r.gamma, as_int(r.n), r.kappa, r.kappa_single_mode});
  const auto best = std::max_element(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return a.kappa < b.kappa;
  });
  if (best != rows.end()) prog.note("max kappa " + format_double(best->kappa) + " at gamma=" +
                                    format_double(best->gamma));
  prog.done();
  return 0;
}

int cmd_drift(const RunConfig& cfg, Table& t, std::ostream& err) {
  const std::size_t n = *cfg.n;
  const double x = cfg.x.value_or(std::numbers::pi);
  const std::size_t grid = cfg.x_grid_size == 0 ? kDriftGridSize : cfg.x_grid_size;
  Progress prog(err, cfg.quiet, "drift");
  prog.note("omega^2=" + format_double(cfg.omega_sq) + " N=" + std::to_string(n) + ", " +
            std::to_string(grid) + " grid points");
  const auto rep = drift_spectrum(cfg.omega_sq, n, x, grid);
  t.columns = {"omega_sq", "n", "x", "global_kappa", "argmin_x", "max_shift_deviation",
               "eigenvalues"};
  t.rows.push_back({rep.omega_sq, as_int(rep.n), rep.x, rep.global_kappa, rep.argmin_x,
                    rep.max_shift_deviation, rep.eigenvalues});
  prog.done();
  return 0;
}

int cmd_zmatrix(const RunConfig& cfg, Table& t, std::ostream& err) {
  const auto grid = parse_grid(cfg.h_grid);
  Progress prog(err, cfg.quiet, "zmatrix");
  prog.note(std::to_string(grid.size()) + " H values, N_max=" + std::to_string(cfg.n_max));
  const auto rows = zmatrix_scan(grid, cfg.n_max, !cfg.final_only, cfg.threads);
  t.columns = {"hurst", "n", "max_offdiag", "pass", "cholesky_nonneg"};
  for (const auto& r : rows) {
    t.rows.push_back({r.hurst, as_int(r.n), r.max_offdiag, r.pass, r.cholesky_nonneg});
  }
  prog.done();
  return 0;
}

TrigPoly oracle_field(const RunConfig& cfg, const TrigPoly& f) {
  const double g = *cfg.gamma;
  if (cfg.field == "generator") return apply_generator(g, f);
  if (cfg.field == "gamma") return carre_du_champ(g, f, f);
  if (cfg.field == "gamma2") return gamma2_definition(g, f);
  if (cfg.field == "gamma2-hadamard") return gamma2_hadamard(g, f);
  if (cfg.field == "drift") return drift_apply(cfg.omega_sq, f);
  if (cfg.field == "drift-correction") return drift_correction(g, cfg.omega_sq, f);
  return drift_gamma2(g, cfg.omega_sq, f);
}

int cmd_oracle(const RunConfig& cfg, Table& t, std::ostream& err) {
  Progress prog(err, cfg.quiet, "oracle");
  if (cfg.fuzz > 0) {
    prog.note(std::to_string(cfg.fuzz) + " random Hadamard-square cases");
    struct Case {
      double gamma;
      std::size_t support;
      double diff;
    };
    const auto cases = parallel_map(
        cfg.fuzz,
        [&](std::size_t i) {
          CounterRng rng(cfg.seed, i);
          const double g = rng.uniform(0.05, 1.95);
          const TrigPoly f = random_trig_poly(rng, -8, 8, 8);
          return Case{g, f.support_size(),
                      max_coeff_diff(gamma2_definition(g, f), gamma2_hadamard(g, f))};
        },
        cfg.threads);
    t.columns = {"case", "gamma", "support", "max_diff", "pass"};
    std::size_t failures = 0;
    for (std::size_t i = 0; i < cases.size(); ++i) {
      const bool pass = cases[i].diff <= 1e-10;
      failures += pass ? 0 : 1;
      t.rows.push_back({as_int(i), cases[i].gamma, as_int(cases[i].support), cases[i].diff, pass});
    }
    prog.done();
    return capped(failures);
  }
  if (!cfg.gamma) throw std::invalid_argument("--gamma is required unless --fuzz is given");
  if (cfg.poly.empty()) throw std::invalid_argument("--f is required unless --fuzz is given");
  const TrigPoly f = TrigPoly::parse(cfg.poly);
  const TrigPoly field = oracle_field(cfg, f);
  if (cfg.coefficients) {
    t.columns = {"freq", "re", "im"};
    for (const auto& [freq, c] : field.coeffs()) {
      t.rows.push_back({static_cast<std::int64_t>(freq), c.real(), c.imag()});
    }
  } else {
    t.columns = {"x", "re", "im"};
    for (double x : x_grid(cfg.x_grid_size == 0 ? 64 : cfg.x_grid_size)) {
      const Complex v = field.evaluate(x);
      t.rows.push_back({x, v.real(), v.imag()});
    }
  }
  prog.done();
  return 0;
}

int cmd_verify(const RunConfig& cfg, Table& t, std::ostream& err) {
  const std::vector<std::string> names = cfg.only.empty() ? check_names() : cfg.only;
  CheckParams params;
  params.gamma = cfg.gamma;
  params.hurst = cfg.hurst;
  params.n = cfg.n;
  params.seed = cfg.seed;
  params.threads = cfg.threads;
  t.columns = {"check", "status", "detail"};
  std::size_t failures = 0;
  for (const auto& name : names) {
    const CheckResult r = run_check(name, params);
    if (counts_as_failure(r.status)) ++failures;
    if (!cfg.quiet) {
      err << "[verify] " << r.name << ' ' << to_string(r.status) << " (" << r.seconds << " s)\n"
          << std::flush;
    }
    t.rows.push_back({r.name, std::string(to_string(r.status)), r.detail});
  }
  return capped(failures);
}

int cmd_report(const RunConfig& cfg, Table& t, std::ostream& err) {
  Progress prog(err, cfg.quiet, "report");
  prog.note("recomputing headline numbers");
  const auto entries = reproduction_report(cfg.seed, cfg.threads);
  t.columns = {"claim", "paper_location", "expected", "computed", "tolerance", "pass"};
  std::size_t failures = 0;
  for (const auto& e : entries) {
    failures += e.pass ? 0 : 1;
    t.rows.push_back({e.claim, e.location, e.expected, e.computed, e.tolerance, e.pass});
  }
  prog.done();
  return capped(failures);
}

}  // namespace

std::vector<double> parse_grid(std::string_view spec) {
  std::vector<double> out;
  if (spec.find(':') != std::string_view::npos) {
    const auto a = spec.find(':');
    const auto b = spec.find(':', a + 1);
    if (b == std::string_view::npos || spec.find(':', b + 1) != std::string_view::npos) {
      throw std::invalid_argument("grid must be start:stop:step");
    }
    const double start = parse_number(spec.substr(0, a));
    const double stop = parse_number(spec.substr(a + 1, b - a - 1));
    const double step = parse_number(spec.substr(b + 1));
    if (!(step > 0.0) || stop < start) {
      throw std::invalid_argument("grid needs step > 0 and start <= stop");
    }
    // Last point k satisfies k·step < (stop − start) + step/2.
    const double count = std::ceil((stop - start) / step + 0.5);
    if (count > 1e6) throw std::invalid_argument("grid has more than 10^6 points");
    for (std::size_t k = 0; k < static_cast<std::size_t>(count); ++k) {
      out.push_back(round12(start + static_cast<double>(k) * step));
    }
  } else {
    std::size_t pos = 0;
    while (pos <= spec.size()) {
      const auto next = std::min(spec.find(',', pos), spec.size());
      out.push_back(parse_number(spec.substr(pos, next - pos)));
      pos = next + 1;
    }
  }
  return out;
}

void write_table(std::ostream& out, const Table& t, OutputFormat format) {
  if (format == OutputFormat::csv) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
    out << '\n';
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
      out << '\n';
    }
    return;
  }
  auto arr = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = json_cell(row[i]);
    arr.push_back(std::move(obj));
  }
  out << arr.dump(2) << '\n';
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::string format;

  CLI::App app{"Bakry-Emery curvature constants of fractional Laplacians on the circle",
               "stablecurv"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("-o,--output", cfg.output_path, "Write to this file instead of stdout");
    sub->add_option("--threads", cfg.threads,
                    "Worker threads (default: STABLECURV_THREADS, else hardware)");
    sub->add_option("--seed", cfg.seed, "Seed for randomized suites");
    sub->add_flag("-q,--quiet", cfg.quiet, "No progress on stderr");
  };
  const auto positive = CLI::Range(1ul, static_cast<std::size_t>(1) << 20);
  const auto gamma_range = CLI::Range(0.0, 2.0);

  auto* spectrum = app.add_subcommand("spectrum", "Generalized spectrum of (R^{o2}, R) at (gamma, N)");
  spectrum->add_option("--gamma", cfg.gamma, "Stability index in (0,2)")->required()->check(gamma_range);
  spectrum->add_option("--n", cfg.n, "Dimension N")->required()->check(positive);
  common(spectrum);

  auto* land = app.add_subcommand("landscape", "kappa(gamma, N) and kappa_1(gamma) over a grid");
  land->add_option("--grid", cfg.gamma_grid, "start:stop:step or comma list")->required();
  land->add_option("--n", cfg.n, "Dimension N (default 200)")->check(positive);
  common(land);

  auto* drift = app.add_subcommand("drift", "Drift-corrected spectrum at gamma = 1");
  drift->add_option("--omega-sq", cfg.omega_sq, "Drift strength omega^2 >= 0")->required();
  drift->add_option("--n", cfg.n, "Dimension N")->required()->check(positive);
  drift->add_option("--x", cfg.x, "Angle for the reported eigenvalues (default pi)");
  drift->add_option("--x-grid-size", cfg.x_grid_size, "Points in the global x-grid (default 4096)");
  common(drift);

  auto* zm = app.add_subcommand("zmatrix", "Largest off-diagonal of R_H^{-1} R_H^{o2}");
  zm->add_option("--h-grid", cfg.h_grid, "Hurst values: start:stop:step or comma list")->required();
  zm->add_option("--n-max", cfg.n_max, "Largest N")->required()->check(positive);
  zm->add_flag("--final-only", cfg.final_only, "Only N = n-max instead of N = 2..n-max");
  common(zm);

  auto* oracle = app.add_subcommand("oracle", "Brute-force Gamma-calculus on a trigonometric polynomial");
  oracle->add_option("--gamma", cfg.gamma, "Stability index in (0,2)")->check(gamma_range);
  oracle->add_option("--f", cfg.poly, "Polynomial as '(n,re,im) (n,re,im) ...'");
  oracle->add_option("--field", cfg.field, "Field to evaluate")
      ->check(CLI::IsMember({"generator", "gamma", "gamma2", "gamma2-hadamard", "drift",
                             "drift-correction", "drift-gamma2"}));
  oracle->add_option("--omega-sq", cfg.omega_sq, "Drift strength for drift fields");
  oracle->add_option("--x-grid-size", cfg.x_grid_size, "Evaluation points (default 64)");
  oracle->add_flag("--coefficients", cfg.coefficients, "Emit Fourier coefficients instead of values");
  oracle->add_option("--fuzz", cfg.fuzz, "Run this many random Hadamard-square cases instead");
  common(oracle);

  auto* verify = app.add_subcommand("verify", "Run the invariant suite");
  verify->set_help_flag("--help", "Print this help message and exit");
  verify->add_option("--only", cfg.only, "Restrict to these checks")->check(CLI::IsMember(check_names()));
  verify->add_option("--gamma", cfg.gamma, "Override gamma where a check uses one")->check(gamma_range);
  verify->add_option("--h", cfg.hurst, "Override H where a check uses one")->check(CLI::Range(0.0, 1.0));
  verify->add_option("--n", cfg.n, "Override the size where a check uses one")->check(positive);
  common(verify);

  auto* report = app.add_subcommand("report", "Recompute every headline number against its tolerance");
  common(report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  const CLI::App* sub = app.get_subcommands().front();
  cfg.command = sub->get_name();
  if (format.empty()) format = cfg.command == "report" ? "json" : "csv";
  cfg.format = format == "json" ? OutputFormat::json : OutputFormat::csv;

  Table table;
  int code = 0;
  try {
    if (cfg.command == "spectrum") code = cmd_spectrum(cfg, table, err);
    else if (cfg.command == "landscape") code = cmd_landscape(cfg, table, err);
    else if (cfg.command == "drift") code = cmd_drift(cfg, table, err);
    else if (cfg.command == "zmatrix") code = cmd_zmatrix(cfg, table, err);
    else if (cfg.command == "oracle") code = cmd_oracle(cfg, table, err);
    else if (cfg.command == "verify") code = cmd_verify(cfg, table, err);
    else code = cmd_report(cfg, table, err);
  } catch (const NumericalError& e) {
    err << "solver error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  if (cfg.output_path.empty()) {
    write_table(out, table, cfg.format);
  } else {
    std::ofstream file(cfg.output_path, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << cfg.output_path << '\n';
      return 1;
    }
    write_table(file, table, cfg.format);
  }
  return code;
}

}  // namespace stablecurv::cli
