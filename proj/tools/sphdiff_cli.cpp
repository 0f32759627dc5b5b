// sphdiff: command-line front end for the spherical-wave autocorrelation library.
//
// Subcommands
//   bessel      J_nu and the normalized Bessel function on a z grid
//   autocorr    closed-form eta(s) on an s grid, optionally with eta_R(s)
//   converge    convergence of eta_R towards eta over an R schedule
//   sphere-ft   Fourier transform of the uniform sphere measure, closed form vs Monte Carlo
//   taylor      Taylor coefficients at s = 0 against the Bessel series
//   verify-all  every verification suite, summarized as JSON
//
// Output goes to --out, else to $SPHDIFF_OUTPUT_DIR/<command>.<format>, else stdout.
// Exit codes: 0 ok, 2 invalid arguments, 3 tolerance check failed, 4 I/O failure.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sphdiff/autocorr.hpp"
#include "sphdiff/diffraction.hpp"
#include "sphdiff/io.hpp"
#include "sphdiff/taylor.hpp"
#include "sphdiff/verify.hpp"

namespace {

using sphdiff::io::json;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitCheckFailed = 3;
constexpr int kExitIo = 4;

struct InvalidArgument {
  std::string field;
  std::string message;
};

struct IoFailure {
  std::string message;
};

struct RunConfig {
  std::string command;
  int d = 2;
  double k = 1.0;
  double s_min = 0.0;
  double s_max = 5.0;
  int s_count = 101;
  std::vector<double> grid;
  std::vector<double> R_list;
  std::optional<double> R;
  double nu = 0.0;
  double radius = 1.0;
  int m_max = 20;
  std::size_t n_samples = 100000;
  std::uint64_t seed = 42;
  std::string out;
  std::string format;
};

void require(bool ok, const std::string& field, const std::string& message) {
  if (!ok) throw InvalidArgument{field, message};
}

std::vector<double> s_grid(const RunConfig& cfg, const std::string& var = "s") {
  require(cfg.s_count >= 2, var + "-count", "must be >= 2");
  require(cfg.s_min >= 0.0, var + "-min", "must be >= 0");
  require(cfg.s_min < cfg.s_max, var + "-max", "must exceed " + var + "-min");
  return sphdiff::verify::linspace(cfg.s_min, cfg.s_max, static_cast<std::size_t>(cfg.s_count));
}

sphdiff::Dimension dimension(const RunConfig& cfg) {
  require(cfg.d >= 1 && cfg.d <= sphdiff::kMaxDimension, "d", "must be in [1, 12]");
  return sphdiff::Dimension(cfg.d);
}

sphdiff::WaveSpec wave(const RunConfig& cfg) {
  require(cfg.k >= 0.0 && std::isfinite(cfg.k), "k", "must be finite and >= 0");
  return sphdiff::WaveSpec(dimension(cfg), cfg.k);
}

json grid_config(const RunConfig& cfg, const std::string& var = "s") {
  return {{var + "_min", cfg.s_min}, {var + "_max", cfg.s_max}, {var + "_count", cfg.s_count}};
}

/// A finished command: table for CSV, JSON envelope, and pass flag.
struct Output {
  std::string csv;
  json document;
  bool pass = true;
  std::string failure;  ///< observed vs required, when pass is false
};

std::string versus(double observed, const char* relation, double bound) {
  return "observed " + sphdiff::io::format_double(observed) + ", required " + relation + " " +
         sphdiff::io::format_double(bound);
}

Output run_bessel(const RunConfig& cfg) {
  const double twice = 2.0 * cfg.nu;
  require(twice == std::floor(twice) && cfg.nu >= -0.5 && cfg.nu <= 7.0, "nu",
          "must be a half-integer in [-0.5, 7]");
  const sphdiff::HalfIntOrder order(static_cast<int>(twice));
  require(cfg.s_count >= 2, "z-count", "must be >= 2");
  require(cfg.s_min >= 0.0, "z-min", "must be >= 0");
  require(cfg.s_min < cfg.s_max, "z-max", "must exceed z-min");
  require(order.twice_nu() >= 0 || cfg.s_min > 0.0, "z-min", "must be > 0 when nu = -1/2");
  const auto zs = sphdiff::verify::linspace(cfg.s_min, cfg.s_max, static_cast<std::size_t>(cfg.s_count));
  std::vector<double> j(zs.size()), jn(zs.size());
  sphdiff::parallel_for(zs.size(), [&](std::size_t i) {
    j[i] = sphdiff::bessel_j(order, zs[i]);
    jn[i] = sphdiff::bessel_normalized(order, zs[i]);
  });
  std::ostringstream csv;
  csv << "z,bessel_j,bessel_normalized\n";
  for (std::size_t i = 0; i < zs.size(); ++i) sphdiff::io::write_csv_row(csv, {zs[i], j[i], jn[i]});
  const json config = {{"nu", cfg.nu}, {"z_min", cfg.s_min}, {"z_max", cfg.s_max}, {"z_count", cfg.s_count}};
  const json results = {{"z", zs}, {"bessel_j", j}, {"bessel_normalized", jn}};
  return {csv.str(), sphdiff::io::envelope("bessel", config, results, true), true, ""};
}

Output run_autocorr(const RunConfig& cfg) {
  const auto w = wave(cfg);
  const auto grid = s_grid(cfg);
  sphdiff::RadialProfile prof;
  json config = {{"d", cfg.d}, {"k", cfg.k}};
  config.update(grid_config(cfg));
  if (cfg.R) {
    require(*cfg.R > 0.0, "R", "must be positive");
    prof = sphdiff::make_profile(w, grid, *cfg.R);
    config["R"] = *cfg.R;
    if (sphdiff::boundary_dominated(cfg.s_max, *cfg.R)) {
      std::cerr << "warning: R < 4 * s-max; boundary error dominates for the largest s\n";
    }
  } else {
    prof = sphdiff::make_profile(w, grid);
  }
  std::ostringstream csv;
  sphdiff::io::write_profile_csv(csv, prof);
  return {csv.str(), sphdiff::io::envelope("autocorr", config, sphdiff::io::to_json(prof), true), true,
          ""};
}

Output run_converge(const RunConfig& cfg) {
  const auto w = wave(cfg);
  require(!cfg.grid.empty(), "grid", "needs at least one s value");
  for (double s : cfg.grid) require(s >= 0.0, "grid", "s values must be >= 0");
  const std::vector<double> R_list = cfg.R_list.empty() ? sphdiff::default_R_schedule() : cfg.R_list;
  require(R_list.size() >= 2, "R", "needs at least two values");
  for (std::size_t i = 0; i < R_list.size(); ++i) {
    require(R_list[i] > 0.0, "R", "values must be positive");
    require(i == 0 || R_list[i] > R_list[i - 1], "R", "values must be strictly increasing");
  }
  const auto rep = sphdiff::convergence_study(w, cfg.grid, R_list);
  bool all_zero = true;
  for (double e : rep.max_abs_error) all_zero = all_zero && e <= 1e-12;
  const bool pass = all_zero || rep.errors_strictly_decreasing();
  if (rep.any_boundary_dominated()) {
    std::cerr << "warning: some (s, R) pairs have R < 4 s; see boundary_dominated in samples\n";
  }
  std::ostringstream csv;
  sphdiff::io::write_report_csv(csv, rep);
  const json config = {{"d", cfg.d}, {"k", cfg.k}, {"grid", cfg.grid}, {"R", R_list}};
  std::string failure;
  if (!pass) failure = "max_abs_error is not strictly decreasing along R";
  return {csv.str(), sphdiff::io::envelope("converge", config, sphdiff::io::to_json(rep), pass), pass,
          failure};
}

Output run_sphere_ft(const RunConfig& cfg) {
  const auto d = dimension(cfg);
  require(cfg.radius >= 0.0 && std::isfinite(cfg.radius), "r", "must be finite and >= 0");
  require(cfg.n_samples >= 100, "n", "must be >= 100");
  const auto grid = s_grid(cfg, "x");
  const sphdiff::SphereMeasure mu(d, cfg.radius);
  const double bound = 5.0 / std::sqrt(static_cast<double>(cfg.n_samples));
  std::ostringstream csv;
  csv << "x_norm,closed,mc_re,mc_im,stderr_re,stderr_im\n";
  json rows = json::array();
  bool pass = true;
  double worst = 0.0;
  for (double xn : grid) {
    std::vector<double> x(cfg.d, 0.0);
    x[0] = xn;
    const auto est = sphdiff::sphere_ft_mc(mu, x, cfg.n_samples, cfg.seed);
    const double closed = sphdiff::sphere_ft_closed(mu, xn);
    worst = std::max(worst, std::abs(est.value - closed));
    pass = pass && std::abs(est.value - closed) < bound;
    sphdiff::io::write_csv_row(csv, {xn, closed, est.value.real(), est.value.imag(), est.stderr_real,
                                     est.stderr_imag});
    rows.push_back({{"x_norm", xn},
                    {"closed", closed},
                    {"mc_re", est.value.real()},
                    {"mc_im", est.value.imag()},
                    {"stderr_re", est.stderr_real},
                    {"stderr_im", est.stderr_imag}});
  }
  json config = {{"d", cfg.d}, {"r", cfg.radius}, {"n", cfg.n_samples}, {"seed", cfg.seed}};
  config.update(grid_config(cfg, "x"));
  const json results = {{"bound", bound}, {"rows", rows}};
  return {csv.str(), sphdiff::io::envelope("sphere-ft", config, results, pass), pass,
          pass ? "" : "max |mc - closed| " + versus(worst, "<", bound)};
}

Output run_taylor(const RunConfig& cfg) {
  const auto d = dimension(cfg);
  require(cfg.m_max >= 0 && cfg.m_max <= sphdiff::kMaxTaylorOrder && cfg.m_max % 2 == 0, "m-max",
          "must be an even integer in [0, 40]");
  std::ostringstream csv;
  csv << "m,h_deriv,coefficient,coefficient_from_derivative,bessel_series\n";
  json rows = json::array();
  double dup_worst = 0.0;
  for (int m = 0; m <= cfg.m_max; ++m) {
    const double h = sphdiff::h_deriv_at_zero(d, m);
    const double c = sphdiff::taylor_coefficient(d, m).value;
    const double cd = sphdiff::taylor_coefficient_from_derivative(d, m).value;
    const double series = m % 2 == 0 ? sphdiff::bessel_series_coefficient(d, m / 2) : 0.0;
    if (c != 0.0) dup_worst = std::max(dup_worst, std::fabs(c - cd) / std::fabs(c));
    sphdiff::io::write_csv_row(csv, {static_cast<double>(m), h, c, cd, series});
    rows.push_back({{"m", m}, {"h_deriv", h}, {"coefficient", c}, {"coefficient_from_derivative", cd},
                    {"bessel_series", series}});
  }
  const double residual = sphdiff::compare_with_bessel_series(d, cfg.m_max);
  const bool pass = residual < 1e-12 && dup_worst < 1e-12;
  const json config = {{"d", cfg.d}, {"m_max", cfg.m_max}};
  const json results = {{"max_series_residual", residual},
                        {"max_duplication_residual", dup_worst},
                        {"rows", rows}};
  return {csv.str(), sphdiff::io::envelope("taylor", config, results, pass), pass,
          pass ? "" : "series residual " + versus(residual, "<", 1e-12) + "; duplication residual " +
                          versus(dup_worst, "<", 1e-12)};
}

Output run_verify_all(const RunConfig& cfg) {
  require(cfg.format == "json", "format", "verify-all emits json only");
  const auto suites = sphdiff::verify::run_all(cfg.seed);
  bool pass = true;
  for (const auto& s : suites) {
    pass = pass && s.pass();
    for (const auto& c : s.checks) {
      if (!c.pass()) {
        std::cerr << "FAIL " << s.name << ": " << c.name << " "
                  << versus(c.observed, c.inclusive ? "<=" : "<", c.bound) << "\n";
      }
    }
  }
  const json config = {{"seed", cfg.seed}};
  const json results = {{"suites", sphdiff::verify::to_json(suites)}};
  return {"", sphdiff::io::envelope("verify-all", config, results, pass), pass,
          pass ? "" : "one or more suites failed"};
}

std::string render(const Output& out, const std::string& format) {
  if (format == "csv") return out.csv;
  return out.document.dump(2) + "\n";
}

void emit(const RunConfig& cfg, const std::string& text) {
  std::filesystem::path path;
  if (!cfg.out.empty()) {
    path = cfg.out;
  } else if (const char* dir = std::getenv("SPHDIFF_OUTPUT_DIR"); dir && *dir) {
    path = std::filesystem::path(dir) / (cfg.command + "." + cfg.format);
  } else {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw IoFailure{"cannot write to stdout"};
    return;
  }
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoFailure{"cannot open " + path.string() + " for writing"};
  file << text;
  file.close();
  if (!file) throw IoFailure{"write to " + path.string() + " failed"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Autocorrelation and diffraction of the spherical wave exp(2 pi i k |x|)"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string format;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out,-o", cfg.out, "output file (default: $SPHDIFF_OUTPUT_DIR/<command>.<format> or stdout)");
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  };
  auto add_wave = [&](CLI::App* sub) {
    sub->add_option("--d", cfg.d, "ambient dimension (1..12)");
    sub->add_option("--k", cfg.k, "wavenumber k >= 0");
  };
  auto add_grid = [&](CLI::App* sub, const std::string& var) {
    sub->add_option("--" + var + "-min", cfg.s_min, "grid start");
    sub->add_option("--" + var + "-max", cfg.s_max, "grid end");
    sub->add_option("--" + var + "-count", cfg.s_count, "grid points (>= 2)");
  };

  auto* bessel = app.add_subcommand("bessel", "Bessel J_nu and its normalized form on a z grid");
  bessel->add_option("--nu", cfg.nu, "order, a half-integer in [-0.5, 7]");
  add_grid(bessel, "z");
  add_common(bessel);

  auto* autocorr = app.add_subcommand("autocorr", "closed-form autocorrelation on an s grid");
  add_wave(autocorr);
  add_grid(autocorr, "s");
  autocorr->add_option("--R", cfg.R, "also evaluate the truncated ball average at this R");
  add_common(autocorr);

  auto* converge = app.add_subcommand("converge", "convergence of the truncated average in R");
  add_wave(converge);
  converge->add_option("--grid", cfg.grid, "comma-separated s values")->delimiter(',')->required();
  converge->add_option("--R", cfg.R_list, "comma-separated increasing R values (default 25,50,100,200)")
      ->delimiter(',');
  add_common(converge);

  auto* sphere = app.add_subcommand("sphere-ft", "sphere-measure Fourier transform, closed vs Monte Carlo");
  sphere->add_option("--d", cfg.d, "ambient dimension (1..12)");
  sphere->add_option("--r", cfg.radius, "sphere radius");
  add_grid(sphere, "x");
  sphere->add_option("--n", cfg.n_samples, "Monte Carlo samples (>= 100)");
  sphere->add_option("--seed", cfg.seed, "random seed");
  add_common(sphere);

  auto* taylor = app.add_subcommand("taylor", "Taylor coefficients at s = 0");
  taylor->add_option("--d", cfg.d, "ambient dimension (1..12)");
  taylor->add_option("--m-max", cfg.m_max, "largest even order (<= 40)");
  add_common(taylor);

  auto* verify_all = app.add_subcommand("verify-all", "run every verification suite");
  verify_all->add_option("--seed", cfg.seed, "random seed");
  add_common(verify_all);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  CLI::App* chosen = app.get_subcommands().front();
  cfg.command = chosen->get_name();
  const bool json_default = cfg.command == "converge" || cfg.command == "verify-all";
  cfg.format = format.empty() ? (json_default ? "json" : "csv") : format;
  if (cfg.command == "bessel") {
    cfg.s_min = bessel->count("--z-min") ? cfg.s_min : 0.0;
    cfg.s_max = bessel->count("--z-max") ? cfg.s_max : 20.0;
    cfg.s_count = bessel->count("--z-count") ? cfg.s_count : 201;
  }

  try {
    Output out;
    if (cfg.command == "bessel") out = run_bessel(cfg);
    else if (cfg.command == "autocorr") out = run_autocorr(cfg);
    else if (cfg.command == "converge") out = run_converge(cfg);
    else if (cfg.command == "sphere-ft") out = run_sphere_ft(cfg);
    else if (cfg.command == "taylor") out = run_taylor(cfg);
    else out = run_verify_all(cfg);
    emit(cfg, render(out, cfg.format));
    if (!out.pass) {
      std::cerr << cfg.command << ": tolerance check failed: " << out.failure << "\n";
      return kExitCheckFailed;
    }
    return kExitOk;
  } catch (const InvalidArgument& e) {
    std::cerr << "invalid argument --" << e.field << ": " << e.message << "\n";
    return kExitInvalid;
  } catch (const IoFailure& e) {
    std::cerr << "I/O error: " << e.message << "\n";
    return kExitIo;
  } catch (const sphdiff::domain_error& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const sphdiff::resource_error& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kExitInvalid;
  }
}
