/**
 * @file verify.hpp
 * @brief Self-verification suites behind `sphdiff verify-all`.
 *
 * Each suite compares the library against an oracle from oracle.hpp (or an
 * algebraic identity) at a fixed tolerance and records observed vs bound.
 */
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "json.hpp"
#include "sphdiff/autocorr.hpp"
#include "sphdiff/diffraction.hpp"
#include "sphdiff/geometry.hpp"
#include "sphdiff/oracle.hpp"
#include "sphdiff/specfun.hpp"
#include "sphdiff/taylor.hpp"

namespace sphdiff::verify {

/// Passes when observed < bound, or observed <= bound for inclusive checks.
struct Check {
  std::string name;
  double observed = 0.0;
  double bound = 0.0;
  bool inclusive = false;

  [[nodiscard]] bool pass() const { return inclusive ? observed <= bound : observed < bound; }
};

struct SuiteResult {
  std::string name;
  std::vector<Check> checks;

  [[nodiscard]] bool pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass(); });
  }
};

inline std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return out;
}

inline std::string tag(const char* key, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s=%g", key, v);
  return buf;
}

/// Adjacent pairs of v that fail to strictly decrease.
inline double count_non_decreasing(const std::vector<double>& v) {
  double n = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] < v[i - 1])) n += 1;
  }
  return n;
}

inline SuiteResult closed_form_identities() {
  SuiteResult r{"closed_form_identities", {}};
  for (double k : {0.5, 1.0, 2.0}) {
    const auto grid = linspace(0.0, 10.0 / std::max(k, 1.0), 200);
    const WaveSpec w1(Dimension(1), k), w2(Dimension(2), k), w3(Dimension(3), k);
    double e1 = 0, e2 = 0, e3 = 0;
    for (double s : grid) {
      e1 = std::max(e1, std::fabs(eta_closed(w1, s) - oracle::eta_d1(k, s)));
      e2 = std::max(e2, std::fabs(eta_closed(w2, s) -
                                  oracle::bessel_j_series(0, 2.0 * std::numbers::pi * k * s)));
      e3 = std::max(e3, std::fabs(eta_closed(w3, s) - oracle::eta_d3(k, s)));
    }
    r.checks.push_back({"d=1 vs cos " + tag("k", k), e1, 1e-12});
    r.checks.push_back({"d=2 vs J0 series " + tag("k", k), e2, 1e-12});
    r.checks.push_back({"d=3 vs sinc " + tag("k", k), e3, 1e-12});
  }
  return r;
}

inline SuiteResult autocorrelation_diffraction_roundtrip() {
  SuiteResult r{"autocorrelation_diffraction_roundtrip", {}};
  const auto grid = linspace(0.0, 10.0, 100);
  for (int d : {1, 2, 3, 5, 8}) {
    for (double k : {0.3, 1.0, 2.0}) {
      r.checks.push_back({tag("d", d) + " " + tag("k", k),
                          roundtrip_check(WaveSpec(Dimension(d), k), grid), 1e-12});
    }
  }
  return r;
}

inline SuiteResult finite_r_convergence() {
  SuiteResult r{"finite_r_convergence", {}};
  const std::vector<double> s_grid = {0.5, 1.0, 2.0};
  const std::vector<double>& R_list = default_R_schedule();
  for (int d : {2, 3}) {
    const ConvergenceReport rep = convergence_study(WaveSpec(Dimension(d), 1.0), s_grid, R_list);
    const std::string dt = tag("d", d);
    r.checks.push_back({dt + " error increases (count)", count_non_decreasing(rep.max_abs_error), 0.0, true});
    r.checks.push_back({dt + " imag residual increases (count)", count_non_decreasing(rep.max_imag_residual), 0.0, true});
    r.checks.push_back({dt + " max_abs_error at R=200", rep.max_abs_error.back(), 0.05});
  }
  return r;
}

inline SuiteResult line_exact_oracle(std::uint64_t seed) {
  SuiteResult r{"line_exact_oracle", {}};
  double worst = 0.0;
  for (std::uint64_t i = 0; i < 20; ++i) {
    rng::IndexStream stream(seed ^ 0x6c696e65ULL, i);
    const auto [u0, u1] = stream.next_uniform_pair();
    const auto [u2, u3] = stream.next_uniform_pair();
    (void)u3;
    const double R = 5.0 + 495.0 * u0;
    const double s = R * u1;
    const double k = 0.1 + 2.9 * u2;
    const auto got = eta_finite_R(WaveSpec(Dimension(1), k), s, R);
    worst = std::max(worst, std::abs(got - oracle::line_average_exact(k, s, R)));
  }
  r.checks.push_back({"20 random (k, s, R): max |eta_R - exact|", worst, 1e-9});
  return r;
}

inline SuiteResult monte_carlo_sphere(std::uint64_t seed) {
  SuiteResult r{"monte_carlo_sphere", {}};
  constexpr std::size_t n = 1'000'000;
  const double bound = 5.0 / std::sqrt(static_cast<double>(n));
  for (int d : {2, 3}) {
    const SphereMeasure mu(Dimension(d), 1.0);
    for (double xn : {0.5, 1.0, 2.0}) {
      std::vector<double> x(d, 0.0);
      x[0] = xn;
      const MCEstimate est = sphere_ft_mc(mu, x, n, seed);
      r.checks.push_back({tag("d", d) + " " + tag("|x|", xn),
                          std::abs(est.value - sphere_ft_closed(mu, xn)), bound});
    }
    const MCEstimate zero = sphere_ft_mc(mu, std::vector<double>(d, 0.0), n, seed);
    r.checks.push_back({tag("d", d) + " x=0: |value - 1|", std::abs(zero.value - 1.0), 0.0, true});
  }
  return r;
}

inline SuiteResult taylor_coefficients() {
  SuiteResult r{"taylor_coefficients", {}};
  for (int d = 1; d <= 6; ++d) {
    r.checks.push_back(
        {tag("d", d) + " Bessel series, m_max=20", compare_with_bessel_series(Dimension(d), 20), 1e-12});
  }
  double nonzero_odd = 0;
  for (int d = 1; d <= kMaxDimension; ++d) {
    for (int m = 1; m <= 39; m += 2) {
      if (h_deriv_at_zero(Dimension(d), m) != 0.0) nonzero_odd += 1;
      if (taylor_coefficient(Dimension(d), m).value != 0.0) nonzero_odd += 1;
    }
  }
  r.checks.push_back({"odd coefficients not exactly zero (count)", nonzero_odd, 0.0, true});
  double dup = 0.0;
  for (int i = 1; i <= 100; ++i) dup = std::max(dup, duplication_residual(0.2 * i));
  r.checks.push_back({"duplication residual on (0, 20]", dup, 1e-12});
  return r;
}

inline SuiteResult small_wavenumber_limit() {
  SuiteResult r{"small_wavenumber_limit", {}};
  double worst = 0.0;
  for (int d = 1; d <= 8; ++d) {
    const WaveSpec w(Dimension(d), 1e-8);
    for (double s : linspace(0.0, 10.0, 1001)) worst = std::max(worst, std::fabs(eta_closed(w, s) - 1.0));
  }
  r.checks.push_back({"k=1e-8: max |eta - 1| on [0, 10]", worst, 1e-6});
  double zero_dev = 0.0;
  for (int d = 1; d <= 8; ++d) {
    const WaveSpec w(Dimension(d), 0.0);
    for (double s : {0.0, 0.5, 3.0, 10.0}) {
      zero_dev = std::max(zero_dev, std::fabs(eta_closed(w, s) - 1.0));
      zero_dev = std::max(zero_dev, std::abs(eta_finite_R(w, s, 50.0) - 1.0));
    }
  }
  r.checks.push_back({"k=0: deviation from exactly 1", zero_dev, 0.0, true});
  return r;
}

inline SuiteResult special_functions() {
  SuiteResult r{"special_functions", {}};
  constexpr std::array<double, 8> zs = {0.1, 0.5, 1, 2, 5, 10, 20, 50};
  double rec = 0.0;
  for (int twice = 0; twice <= 10; ++twice) {
    const double nu = 0.5 * twice;
    for (double z : zs) {
      // J_{-1} = -J_1 closes the nu = 0 case
      const double below = twice == 0 ? -bessel_j(HalfIntOrder(2), z) : bessel_j(HalfIntOrder(twice - 2), z);
      const double above = bessel_j(HalfIntOrder(twice + 2), z);
      rec = std::max(rec, std::fabs(below + above - 2.0 * nu / z * bessel_j(HalfIntOrder(twice), z)));
    }
  }
  r.checks.push_back({"three-term recurrence", rec, 1e-10});

  double half = 0.0;
  for (double z : linspace(0.1, 50.0, 2000)) {
    const double amp = std::sqrt(2.0 / (std::numbers::pi * z));
    half = std::max(half, std::fabs(bessel_j(HalfIntOrder(1), z) - amp * std::sin(z)));
    half = std::max(half, std::fabs(bessel_j(HalfIntOrder(-1), z) - amp * std::cos(z)));
  }
  r.checks.push_back({"half-integer identities on [0.1, 50]", half, 1e-12});

  double overlap = 0.0;
  for (int twice = -1; twice <= 14; ++twice) {
    for (double z : linspace(14.0, 16.0, 201)) {
      overlap = std::max(overlap, std::fabs(specfun_detail::bessel_j_series_branch(HalfIntOrder(twice), z) -
                                            specfun_detail::bessel_j_large_branch(HalfIntOrder(twice), z)));
    }
  }
  r.checks.push_back({"branch agreement on [14, 16]", overlap, 1e-9});

  double excess = 0.0;
  for (int twice = -1; twice <= 14; ++twice) {
    for (double z : linspace(0.0, 100.0, 10001)) {
      excess = std::max(excess, std::fabs(bessel_normalized(HalfIntOrder(twice), z)) - 1.0);
    }
  }
  r.checks.push_back({"max(|normalized| - 1)", excess, 1e-12, true});

  double grec = 0.0;
  for (double x = 0.5; x <= 20.0; x += 0.5) {
    grec = std::max(grec, std::fabs(gamma(x + 1.0) - x * gamma(x)) / gamma(x + 1.0));
  }
  r.checks.push_back({"gamma recurrence", grec, 1e-13});
  return r;
}

inline std::vector<SuiteResult> run_all(std::uint64_t seed) {
  return {closed_form_identities(), autocorrelation_diffraction_roundtrip(), finite_r_convergence(),
          line_exact_oracle(seed),  monte_carlo_sphere(seed),                taylor_coefficients(),
          small_wavenumber_limit(), special_functions()};
}

inline nlohmann::ordered_json to_json(const std::vector<SuiteResult>& suites) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& s : suites) {
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& c : s.checks) {
      checks.push_back({{"name", c.name},
                        {"observed", c.observed},
                        {"bound", c.bound},
                        {"relation", c.inclusive ? "<=" : "<"},
                        {"pass", c.pass()}});
    }
    arr.push_back({{"name", s.name}, {"pass", s.pass()}, {"checks", checks}});
  }
  return arr;
}

}  // namespace sphdiff::verify
