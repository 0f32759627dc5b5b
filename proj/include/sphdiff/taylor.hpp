/**
 * @file taylor.hpp
 * @brief Taylor coefficients of the autocorrelation profile h(s) at s = 0,
 *        normalized to k = 1 (general k by substituting s -> k s).
 *
 * Two routes to the coefficient of s^m are provided:
 *   - from the derivative values h^{(m)}(0) divided by m!,
 *   - from the form simplified by Legendre's duplication formula,
 *     (-1)^n Gamma(d/2) pi^{2n} / (Gamma(n+1) Gamma(d/2+n)), m = 2n.
 * Both are evaluated in log-Gamma space with the sign carried separately.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "sphdiff/errors.hpp"
#include "sphdiff/geometry.hpp"
#include "sphdiff/specfun.hpp"

namespace sphdiff {

inline constexpr int kMaxTaylorOrder = 40;

/// Coefficient of s^m in h.
struct TaylorCoefficient {
  int m = 0;
  double value = 0.0;
};

namespace taylor_detail {

inline void check_order(int m) {
  if (m < 0 || m > kMaxTaylorOrder) {
    throw domain_error("taylor: derivative order must be in [0, 40], got " + std::to_string(m));
  }
}

inline double log_pi() { return std::log(std::numbers::pi); }

}  // namespace taylor_detail

/// h^{(m)}(0) = (-2 pi i)^m Gamma(d/2) Gamma((m+1)/2) / (sqrt(pi) Gamma((d+m)/2)) for even m, else 0.
inline double h_deriv_at_zero(Dimension d, int m) {
  taylor_detail::check_order(m);
  if (m % 2 != 0) return 0.0;
  const double half_d = 0.5 * d.value();
  // (-2 pi i)^{2n} = (-1)^n (2 pi)^{2n}
  const double log_mag = m * std::log(2.0 * std::numbers::pi) + log_gamma(half_d) +
                         log_gamma(0.5 * (m + 1)) - 0.5 * taylor_detail::log_pi() -
                         log_gamma(0.5 * (d.value() + m));
  const double sign = ((m / 2) % 2 == 0) ? 1.0 : -1.0;
  return sign * std::exp(log_mag);
}

/// Duplication-simplified coefficient of s^m.
inline TaylorCoefficient taylor_coefficient(Dimension d, int m) {
  taylor_detail::check_order(m);
  if (m % 2 != 0) return {m, 0.0};
  const int n = m / 2;
  const double half_d = 0.5 * d.value();
  const double log_mag = log_gamma(half_d) + 2.0 * n * taylor_detail::log_pi() -
                         log_gamma(n + 1.0) - log_gamma(half_d + n);
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  return {m, sign * std::exp(log_mag)};
}

/// The same coefficient reached as h^{(m)}(0) / m!.
inline TaylorCoefficient taylor_coefficient_from_derivative(Dimension d, int m) {
  taylor_detail::check_order(m);
  return {m, h_deriv_at_zero(d, m) / gamma(m + 1.0)};
}

/// Coefficient of s^{2n} in the Bessel series of eta (k = 1), via the normalized series recurrence.
inline double bessel_series_coefficient(Dimension d, int n) {
  // eta(s) = sum_n c_n (pi s)^{2n}
  return normalized_series_coefficient(d.bessel_order(), n) *
         std::pow(std::numbers::pi, 2.0 * n);
}

/// Largest relative difference between taylor_coefficient(d, 2n) and the Bessel series, n <= m_max/2.
inline double compare_with_bessel_series(Dimension d, int m_max) {
  taylor_detail::check_order(m_max);
  if (m_max % 2 != 0) throw domain_error("compare_with_bessel_series: m_max must be even");
  double worst = 0.0;
  for (int n = 0; 2 * n <= m_max; ++n) {
    const double taylor = taylor_coefficient(d, 2 * n).value;
    const double series = bessel_series_coefficient(d, n);
    worst = std::max(worst, std::fabs(taylor - series) / std::fabs(series));
  }
  return worst;
}

/// Partial Taylor sum through s^{2 n_max} at k = 1.
inline double taylor_partial_sum(Dimension d, double s, int n_max) {
  taylor_detail::check_order(2 * n_max);
  double acc = 0.0;
  for (int n = n_max; n >= 0; --n) acc = acc * s * s + taylor_coefficient(d, 2 * n).value;
  return acc;
}

}  // namespace sphdiff
