/**
 * @file oracle.hpp
 * @brief Reference evaluations used by the verification suites.
 *
 * Nothing here calls into specfun, autocorr or diffraction: the Bessel
 * series is summed term by term in 100-digit decimal arithmetic, the d = 1
 * truncated average is a hand-integrated closed form, and the angular
 * constant is integrated numerically factor by factor.
 */
#pragma once

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_dec_float.hpp>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

namespace sphdiff::oracle {

using Wide = boost::multiprecision::cpp_dec_float_100;

/// Gamma(twice/2) in wide precision, from Gamma(1/2) = sqrt(pi), Gamma(1) = 1.
inline Wide gamma_half(int twice) {
  const Wide pi = boost::math::constants::pi<Wide>();
  Wide acc = (twice % 2 == 0) ? Wide(1) : Wide(sqrt(pi));
  for (int t = (twice % 2 == 0) ? 2 : 1; t + 2 <= twice; t += 2) acc *= Wide(t) / 2;
  return acc;
}

/// J_nu(z) from the power series (z/2)^nu sum (-1)^m / (m! Gamma(nu+m+1)) (z/2)^{2m}.
inline double bessel_j_series(int twice_nu, double z) {
  const Wide half_z = Wide(z) / 2;
  const Wide q = half_z * half_z;
  // term_m = (-1)^m / (m! Gamma(nu+m+1)) (z/2)^{2m}
  Wide term = Wide(1) / gamma_half(twice_nu + 2);
  Wide sum = term;
  const Wide nu = Wide(twice_nu) / 2;
  for (int m = 1; m < 2000; ++m) {
    term *= -q / (Wide(m) * (nu + m));
    sum += term;
    if (m > 10 && abs(term) < Wide("1e-60")) break;
  }
  const Wide lead = pow(half_z, nu);
  return static_cast<double>(lead * sum);
}

/// Gamma(nu+1) J_nu(z) / (z/2)^nu from the same series.
inline double bessel_normalized_series(int twice_nu, double z) {
  const Wide half_z = Wide(z) / 2;
  const Wide q = half_z * half_z;
  const Wide nu = Wide(twice_nu) / 2;
  Wide term = 1;
  Wide sum = 1;
  for (int m = 1; m < 2000; ++m) {
    term *= -q / (Wide(m) * (nu + m));
    sum += term;
    if (m > 10 && abs(term) < Wide("1e-60")) break;
  }
  return static_cast<double>(sum);
}

/// Closed forms of the autocorrelation profile for d = 1 and d = 3.
inline double eta_d1(double k, double s) { return std::cos(2.0 * std::numbers::pi * k * s); }
inline double eta_d3(double k, double s) {
  const double z = 2.0 * std::numbers::pi * k * s;
  return z == 0.0 ? 1.0 : std::sin(z) / z;
}

/**
 * (1/2R) int_{-R}^{R} exp(2 pi i k |y|) exp(-2 pi i k |s - y|) dy for 0 <= s <= R.
 *
 * The phase is constant on [-R, 0] and [s, R], and equals 2 pi k (2y - s) on
 * [0, s], which gives
 *   [R e^{-i phi} + (R - s) e^{i phi} + sin(phi) / (2 pi k)] / (2R),  phi = 2 pi k s.
 */
inline std::complex<double> line_average_exact(double k, double s, double R) {
  const double phi = 2.0 * std::numbers::pi * k * s;
  const std::complex<double> e_plus = std::polar(1.0, phi);
  const std::complex<double> e_minus = std::polar(1.0, -phi);
  return (R * e_minus + (R - s) * e_plus + std::sin(phi) / (2.0 * std::numbers::pi * k)) /
         (2.0 * R);
}

/// Composite Simpson's rule on [a, b] with `intervals` (even) subintervals.
inline double simpson(const std::function<double(double)>& f, double a, double b, int intervals) {
  const double h = (b - a) / intervals;
  double acc = f(a) + f(b);
  for (int i = 1; i < intervals; ++i) acc += (i % 2 == 1 ? 4.0 : 2.0) * f(a + i * h);
  return acc * h / 3.0;
}

/// Angular constant as the product of integrals over [0, pi] of sin^j, j = 1..d-3, times 2 pi.
/// For d = 2 the angle is folded onto [0, pi] and the constant counts the two half-turns.
inline double theta_product(int d) {
  if (d == 2) return 2.0;
  double acc = 2.0 * std::numbers::pi;
  for (int j = 1; j <= d - 3; ++j) {
    acc *= simpson([j](double t) { return std::pow(std::sin(t), j); }, 0.0, std::numbers::pi, 4000);
  }
  return acc;
}

/// First positive zero of J_0, bisected on the wide series between 2 and 3.
inline double first_zero_j0() {
  double lo = 2.0;
  double hi = 3.0;
  for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (bessel_j_series(0, mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace sphdiff::oracle
