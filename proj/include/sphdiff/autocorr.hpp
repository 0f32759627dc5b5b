/**
 * @file autocorr.hpp
 * @brief Autocorrelation of the spherical wave exp(2 pi i k |x|) on R^d.
 *
 * The limit profile is the normalized Bessel function
 *
 *     eta(s) = Gamma(d/2) J_{d/2-1}(2 pi k s) / (pi k s)^{d/2-1},
 *
 * and the truncated ball average eta_R(s) is evaluated numerically in polar
 * form (radial variable rho, polar angle theta against x = s e_1):
 *
 *     eta_R(s) = Theta_d / vol(B_R) int_0^R int_0^pi rho^{d-1} sin^{d-2}(theta)
 *                exp(2 pi i k (rho - |x - y|)) dtheta drho.
 *
 * For d = 1 the polar reduction does not apply; the interval average is
 * integrated exactly piece by piece, the phase being linear on each piece.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "sphdiff/errors.hpp"
#include "sphdiff/geometry.hpp"
#include "sphdiff/parallel.hpp"
#include "sphdiff/quadrature.hpp"
#include "sphdiff/specfun.hpp"

namespace sphdiff {

/// Dimension d and wavenumber k >= 0 of the wave exp(2 pi i k |x|).
class WaveSpec {
 public:
  WaveSpec(Dimension d, double k) : d_(d), k_(k) {
    if (!(k >= 0.0) || !std::isfinite(k)) {
      throw domain_error("WaveSpec: wavenumber k must be finite and >= 0");
    }
  }
  [[nodiscard]] Dimension dim() const noexcept { return d_; }
  [[nodiscard]] int d() const noexcept { return d_.value(); }
  [[nodiscard]] double k() const noexcept { return k_; }

 private:
  Dimension d_;
  double k_;
};

/// Panel layout for the finite-R integral.
///
/// Radial panels have length 1 / (k * radial_panels_per_period), i.e. quarter
/// periods by default. The polar angle uses
/// max(min_angular_panels, ceil(angular_panels_per_ks * k * s)) panels.
struct QuadratureSpec {
  int radial_panels_per_period = 4;
  int radial_nodes_per_panel = 12;
  int angular_nodes_per_panel = 16;
  int min_angular_panels = 8;
  double angular_panels_per_ks = 4.0;

  void validate() const {
    if (radial_panels_per_period < 1 || radial_nodes_per_panel < 1 ||
        angular_nodes_per_panel < 1 || min_angular_panels < 1 || !(angular_panels_per_ks > 0.0)) {
      throw domain_error("QuadratureSpec: all counts must be >= 1");
    }
  }
};

inline constexpr double kMaxPanels = 1e7;

/// Closed-form autocorrelation at distance s.
inline double eta_closed(const WaveSpec& wave, double s) {
  if (!(s >= 0.0)) throw domain_error("eta_closed: s must be >= 0");
  return bessel_normalized(wave.dim().bessel_order(), 2.0 * std::numbers::pi * (wave.k() * s));
}

/// True when R < 4 s, where much of the shifted ball leaves B_R and the boundary error dominates.
inline bool boundary_dominated(double s, double R) { return R < 4.0 * s; }

namespace autocorr_detail {

inline std::complex<double> line_average(double k, double s, double R) {
  // (1 / 2R) int_{-R}^{R} exp(2 pi i k (|y| - |s - y|)) dy
  std::vector<double> cuts = {-R};
  if (0.0 < R) cuts.push_back(0.0);
  if (s > 0.0 && s < R) cuts.push_back(s);
  cuts.push_back(R);
  const double two_pi_k = 2.0 * std::numbers::pi * k;
  std::complex<double> total{0.0, 0.0};
  for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
    const double a = cuts[p];
    const double b = cuts[p + 1];
    if (b <= a) continue;
    const double mid = 0.5 * (a + b);
    const double sign_y = mid > 0.0 ? 1.0 : -1.0;
    const double sign_shift = (s - mid) > 0.0 ? 1.0 : -1.0;
    // phase = slope * y + offset on this piece
    const double slope = two_pi_k * (sign_y + sign_shift);
    const double offset = -two_pi_k * sign_shift * s;
    const std::complex<double> base = std::polar(1.0, offset);
    if (slope == 0.0) {
      total += base * (b - a);
    } else {
      const std::complex<double> diff = std::polar(1.0, slope * b) - std::polar(1.0, slope * a);
      total += base * diff / std::complex<double>(0.0, slope);
    }
  }
  return total / (2.0 * R);
}

inline std::string describe(double k, double R, double s) {
  std::ostringstream os;
  os.precision(17);
  os << "(k=" << k << ", R=" << R << ", s=" << s << ")";
  return os.str();
}

}  // namespace autocorr_detail

/**
 * Normalized truncated autocorrelation over the ball B_R.
 *
 * The result is complex; only its R -> infinity limit is real, and the
 * imaginary part serves as a built-in error indicator.
 */
inline std::complex<double> eta_finite_R(const WaveSpec& wave, double s, double R,
                                         const QuadratureSpec& quad = {}) {
  if (!(R > 0.0) || !std::isfinite(R)) throw domain_error("eta_finite_R: R must be positive");
  if (!(s >= 0.0) || !std::isfinite(s)) throw domain_error("eta_finite_R: s must be >= 0");
  quad.validate();
  const double k = wave.k();
  if (k == 0.0) return {1.0, 0.0};
  const int d = wave.d();
  if (d == 1) return autocorr_detail::line_average(k, s, R);

  const double radial_panels = std::ceil(R * k * quad.radial_panels_per_period);
  const double angular_panels =
      std::max<double>(quad.min_angular_panels, std::ceil(quad.angular_panels_per_ks * k * s));
  if (radial_panels * angular_panels > kMaxPanels) {
    throw resource_error("eta_finite_R: quadrature needs " +
                         std::to_string(radial_panels * angular_panels) +
                         " panels (cap 1e7) at " + autocorr_detail::describe(k, R, s));
  }

  // Angular nodes carry the sin^{d-2} Jacobian.
  const GaussLegendreRule ang_rule = gauss_legendre(quad.angular_nodes_per_panel);
  const auto n_ang_panels = static_cast<std::size_t>(angular_panels);
  const std::size_t n_ang = n_ang_panels * ang_rule.nodes.size();
  std::vector<double> ang_weight(n_ang), ang_cos(n_ang), ang_half_sin_sq(n_ang);
  {
    const double h = std::numbers::pi / static_cast<double>(n_ang_panels);
    std::size_t idx = 0;
    for (std::size_t p = 0; p < n_ang_panels; ++p) {
      const double a = h * static_cast<double>(p);
      for (std::size_t j = 0; j < ang_rule.nodes.size(); ++j, ++idx) {
        const double theta = a + 0.5 * h * (ang_rule.nodes[j] + 1.0);
        const double half_sin = std::sin(0.5 * theta);
        ang_weight[idx] = 0.5 * h * ang_rule.weights[j] * std::pow(std::sin(theta), d - 2);
        ang_cos[idx] = std::cos(theta);
        ang_half_sin_sq[idx] = half_sin * half_sin;
      }
    }
  }

  // Radial breakpoints: uniform panels plus a cut at rho = s, where |x - y| has its kink.
  std::vector<double> cuts;
  {
    const auto n_rad = static_cast<std::size_t>(radial_panels);
    cuts.reserve(n_rad + 2);
    for (std::size_t p = 0; p <= n_rad; ++p) {
      cuts.push_back(std::min(R, R * static_cast<double>(p) / static_cast<double>(n_rad)));
    }
    if (s > 0.0 && s < R) {
      auto it = std::lower_bound(cuts.begin(), cuts.end(), s);
      if (it != cuts.end() && *it != s) cuts.insert(it, s);
    }
  }

  const GaussLegendreRule rad_rule = gauss_legendre(quad.radial_nodes_per_panel);
  const double two_pi_k = 2.0 * std::numbers::pi * k;
  std::complex<double> total{0.0, 0.0};
  for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
    const double a = cuts[p];
    const double b = cuts[p + 1];
    if (b <= a) continue;
    const double half = 0.5 * (b - a);
    std::complex<double> panel{0.0, 0.0};
    for (std::size_t i = 0; i < rad_rule.nodes.size(); ++i) {
      const double rho = a + half * (rad_rule.nodes[i] + 1.0);
      const double radial_weight = half * rad_rule.weights[i] * std::pow(rho / R, d - 1);
      double re = 0.0;
      double im = 0.0;
      for (std::size_t j = 0; j < n_ang; ++j) {
        const double diff = rho - s;
        const double dist = std::sqrt(diff * diff + 4.0 * rho * s * ang_half_sin_sq[j]);
        const double denom = rho + dist;
        // rho - |x - y| written without cancellation
        const double phase =
            denom > 0.0 ? two_pi_k * (2.0 * rho * s * ang_cos[j] - s * s) / denom : 0.0;
        re += ang_weight[j] * std::cos(phase);
        im += ang_weight[j] * std::sin(phase);
      }
      panel += radial_weight * std::complex<double>(re, im);
    }
    total += panel;
  }
  const double half_d = 0.5 * d;
  const double norm = theta_d(wave.dim()) * gamma(half_d + 1.0) /
                      (std::pow(std::numbers::pi, half_d) * R);
  return total * norm;
}

/// eta on a radial grid, optionally paired with the finite-R numerics.
struct RadialProfile {
  std::vector<double> s_values;
  std::vector<double> eta_closed;
  std::optional<std::vector<std::complex<double>>> eta_numeric;
  std::optional<double> R;

  void validate() const {
    const std::size_t n = s_values.size();
    if (eta_closed.size() != n || (eta_numeric && eta_numeric->size() != n)) {
      throw domain_error("RadialProfile: column lengths differ");
    }
    for (std::size_t i = 1; i < n; ++i) {
      if (!(s_values[i] > s_values[i - 1])) {
        throw domain_error("RadialProfile: s_values must be strictly increasing");
      }
    }
    if (eta_numeric.has_value() != R.has_value()) {
      throw domain_error("RadialProfile: numeric column and R come together");
    }
  }
};

inline RadialProfile make_profile(const WaveSpec& wave, std::span<const double> s_grid) {
  RadialProfile prof;
  prof.s_values.assign(s_grid.begin(), s_grid.end());
  prof.eta_closed.resize(s_grid.size());
  for (std::size_t i = 0; i < s_grid.size(); ++i) prof.eta_closed[i] = eta_closed(wave, s_grid[i]);
  prof.validate();
  return prof;
}

inline RadialProfile make_profile(const WaveSpec& wave, std::span<const double> s_grid, double R,
                                  const QuadratureSpec& quad = {}) {
  RadialProfile prof = make_profile(wave, s_grid);
  std::vector<std::complex<double>> numeric(s_grid.size());
  parallel_for(s_grid.size(), [&](std::size_t i) { numeric[i] = eta_finite_R(wave, s_grid[i], R, quad); });
  prof.eta_numeric = std::move(numeric);
  prof.R = R;
  return prof;
}

/// One (R, s) evaluation inside a convergence study.
struct ConvergenceSample {
  double R;
  double s;
  std::complex<double> eta_numeric;
  double eta_closed;
  bool boundary_dominated;
};

/// Per-R error summary of eta_R against the closed form.
struct ConvergenceReport {
  std::vector<double> R_values;
  std::vector<double> max_abs_error;
  std::vector<double> max_imag_residual;
  /// error(R_i) / error(R_{i+1}); empty when the denominator is zero.
  std::vector<std::optional<double>> decay_ratios;
  std::vector<ConvergenceSample> samples;

  [[nodiscard]] bool errors_strictly_decreasing() const {
    for (std::size_t i = 1; i < max_abs_error.size(); ++i) {
      if (!(max_abs_error[i] < max_abs_error[i - 1])) return false;
    }
    return true;
  }
  [[nodiscard]] bool imag_strictly_decreasing() const {
    for (std::size_t i = 1; i < max_imag_residual.size(); ++i) {
      if (!(max_imag_residual[i] < max_imag_residual[i - 1])) return false;
    }
    return true;
  }
  [[nodiscard]] bool any_boundary_dominated() const {
    for (const auto& smp : samples) {
      if (smp.boundary_dominated) return true;
    }
    return false;
  }
};

inline const std::vector<double>& default_R_schedule() {
  static const std::vector<double> schedule = {25.0, 50.0, 100.0, 200.0};
  return schedule;
}

inline ConvergenceReport convergence_study(const WaveSpec& wave, std::span<const double> s_grid,
                                           std::span<const double> R_list,
                                           const QuadratureSpec& quad = {}) {
  if (R_list.size() < 2) throw domain_error("convergence_study: need at least two R values");
  for (std::size_t i = 1; i < R_list.size(); ++i) {
    if (!(R_list[i] > R_list[i - 1])) {
      throw domain_error("convergence_study: R_list must be strictly increasing");
    }
  }
  if (s_grid.empty()) throw domain_error("convergence_study: s_grid is empty");

  const std::size_t ns = s_grid.size();
  std::vector<ConvergenceSample> samples(R_list.size() * ns);
  parallel_for(samples.size(), [&](std::size_t idx) {
    const double R = R_list[idx / ns];
    const double s = s_grid[idx % ns];
    samples[idx] = {R, s, eta_finite_R(wave, s, R, quad), eta_closed(wave, s),
                    boundary_dominated(s, R)};
  });

  ConvergenceReport report;
  report.R_values.assign(R_list.begin(), R_list.end());
  for (std::size_t r = 0; r < R_list.size(); ++r) {
    double err = 0.0;
    double imag = 0.0;
    for (std::size_t j = 0; j < ns; ++j) {
      const auto& smp = samples[r * ns + j];
      err = std::max(err, std::fabs(smp.eta_numeric.real() - smp.eta_closed));
      imag = std::max(imag, std::fabs(smp.eta_numeric.imag()));
    }
    report.max_abs_error.push_back(err);
    report.max_imag_residual.push_back(imag);
  }
  for (std::size_t r = 0; r + 1 < R_list.size(); ++r) {
    const double next = report.max_abs_error[r + 1];
    report.decay_ratios.push_back(next > 0.0 ? std::optional<double>(report.max_abs_error[r] / next)
                                             : std::nullopt);
  }
  report.samples = std::move(samples);
  return report;
}

}  // namespace sphdiff
