/**
 * @file specfun.hpp
 * @brief Gamma function and Bessel functions J_nu of integer and
 *        half-integer order, including the normalized form
 *        Gamma(nu+1) J_nu(z) / (z/2)^nu.
 *
 * Small arguments (z < 15) are handled by the power series, summed in
 * long double with Neumaier compensation. Large arguments use the
 * elementary closed forms for half-integer order and the Hankel
 * asymptotic expansion, truncated at its smallest term, for integer order.
 */
#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "sphdiff/errors.hpp"

namespace sphdiff {

/// Order nu of a Bessel function stored exactly as twice_nu / 2.
class HalfIntOrder {
 public:
  explicit HalfIntOrder(int twice_nu) : twice_nu_(twice_nu) {
    if (twice_nu < -1) {
      throw domain_error("HalfIntOrder: twice_nu must be >= -1, got " +
                         std::to_string(twice_nu));
    }
  }

  /// The order d/2 - 1 attached to the ambient dimension d.
  static HalfIntOrder for_dimension(int d) { return HalfIntOrder(d - 2); }

  [[nodiscard]] int twice_nu() const noexcept { return twice_nu_; }
  [[nodiscard]] double value() const noexcept { return 0.5 * twice_nu_; }
  [[nodiscard]] bool is_half_integer() const noexcept { return (twice_nu_ & 1) != 0; }

  friend bool operator==(HalfIntOrder, HalfIntOrder) = default;

 private:
  int twice_nu_;
};

namespace specfun_detail {

inline constexpr double kSqrtPi = 1.7724538509055160272981674833411451828;

/// Below this argument the power series is used; at and above it the large-z forms.
inline constexpr double kSeriesLimit = 15.0;

// Lanczos approximation, g = 7, 9 terms.
inline constexpr double kLanczosG = 7.0;
inline constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993227684700473478,  676.520368121885098567009190444019,
    -1259.13921672240287047156078755283, 771.3234287776530788486528258894,
    -176.61502916214059906584551354,     12.507343278686904814458936853,
    -0.13857109526572011689554707,       9.984369578019570859563e-6,
    1.50563273514931155834e-7};

inline double lanczos_sum(double x) {
  // x is the shifted argument (Gamma(x + 1) form).
  double acc = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) {
    acc += kLanczos[i] / (x + static_cast<double>(i));
  }
  return acc;
}

/// True when 2x is an integer small enough for exact recurrence.
inline bool is_half_integer_grid(double x, long& twice) {
  const double t = 2.0 * x;
  if (t > 400.0 || t != std::floor(t)) return false;
  twice = static_cast<long>(t);
  return true;
}

/// Gamma at x = twice/2 by the recurrence from Gamma(1/2) and Gamma(1).
inline double gamma_half_grid(long twice) {
  long double acc = (twice % 2 == 0) ? 1.0L : static_cast<long double>(kSqrtPi);
  for (long t = (twice % 2 == 0) ? 2 : 1; t + 2 <= twice; t += 2) {
    acc *= 0.5L * static_cast<long double>(t);
  }
  return static_cast<double>(acc);
}

/// Neumaier compensated accumulator.
struct CompensatedSum {
  long double sum = 0.0L;
  long double carry = 0.0L;

  void add(long double v) {
    const long double t = sum + v;
    if (std::fabs(sum) >= std::fabs(v)) {
      carry += (sum - t) + v;
    } else {
      carry += (v - t) + sum;
    }
    sum = t;
  }
  [[nodiscard]] long double value() const { return sum + carry; }
};

/// sum_m (-1)^m Gamma(nu+1) / (m! Gamma(nu+m+1)) (z/2)^{2m}
inline double normalized_series(double nu, double z) {
  const long double q = -0.25L * static_cast<long double>(z) * z;
  const long double nul = nu;
  CompensatedSum acc;
  long double term = 1.0L;
  acc.add(term);
  for (int m = 1; m < 400; ++m) {
    term *= q / (static_cast<long double>(m) * (nul + m));
    acc.add(term);
    if (std::fabs(term) < 1e-22L * std::fabs(acc.value()) && m > 2) break;
  }
  return static_cast<double>(acc.value());
}

/// J_{n+1/2}(z) for n >= -1 and z > 0 via spherical Bessel upward recurrence.
inline double half_integer_closed(int twice_nu, double z) {
  const long double zl = z;
  const long double prefactor = std::sqrt(2.0L / (std::numbers::pi_v<long double> * zl));
  // J_{-1/2} = sqrt(2/(pi z)) cos z, J_{1/2} = sqrt(2/(pi z)) sin z
  long double prev = std::cos(zl);  // z * j_{-1}
  long double cur = std::sin(zl);   // z * j_0
  if (twice_nu == -1) return static_cast<double>(prefactor * prev);
  const int n_max = (twice_nu - 1) / 2;
  for (int n = 0; n < n_max; ++n) {
    const long double next = (2.0L * n + 1.0L) / zl * cur - prev;
    prev = cur;
    cur = next;
  }
  return static_cast<double>(prefactor * cur);
}

/// Hankel large-argument expansion for J_nu, truncated at the smallest term.
inline double hankel_asymptotic(double nu, double z) {
  const long double zl = z;
  const long double mu = 4.0L * nu * nu;
  const long double pi = std::numbers::pi_v<long double>;
  CompensatedSum p;
  CompensatedSum q;
  p.add(1.0L);
  long double term = 1.0L;
  long double prev_mag = 1.0L;
  constexpr int kMinTerms = 8;
  for (int k = 1; k < 200; ++k) {
    const long double odd = 2.0L * k - 1.0L;
    term *= (mu - odd * odd) / (8.0L * k * zl);
    const long double mag = std::fabs(term);
    if (mag == 0.0L) break;
    if (k > kMinTerms && mag >= prev_mag) break;
    // signs: P gets a_0 - a_2 + a_4 ..., Q gets a_1 - a_3 + ...
    const bool negative = ((k / 2) % 2) == 1;
    const long double signed_term = negative ? -term : term;
    if (k % 2 == 0) {
      p.add(signed_term);
    } else {
      q.add(signed_term);
    }
    if (k > kMinTerms && mag < 1e-21L) break;
    prev_mag = mag;
  }
  const long double chi = zl - (0.5L * nu + 0.25L) * pi;
  const long double amp = std::sqrt(2.0L / (pi * zl));
  return static_cast<double>(amp * (p.value() * std::cos(chi) - q.value() * std::sin(chi)));
}

inline double bessel_large(HalfIntOrder order, double z) {
  if (order.is_half_integer()) return half_integer_closed(order.twice_nu(), z);
  return hankel_asymptotic(order.value(), z);
}

}  // namespace specfun_detail

/// Gamma(x) for x > 0. Exact-to-rounding on the half-integer grid.
inline double gamma(double x) {
  using namespace specfun_detail;
  if (!(x > 0.0)) throw domain_error("gamma: argument must be positive");
  long twice = 0;
  if (is_half_integer_grid(x, twice)) return gamma_half_grid(twice);
  if (x < 0.5) return gamma(x + 1.0) / x;
  const double xm = x - 1.0;
  const double t = xm + kLanczosG + 0.5;
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, xm + 0.5) * std::exp(-t) *
         lanczos_sum(xm);
}

/// log Gamma(x) for x > 0.
inline double log_gamma(double x) {
  using namespace specfun_detail;
  if (!(x > 0.0)) throw domain_error("log_gamma: argument must be positive");
  long twice = 0;
  if (x <= 100.0 && is_half_integer_grid(x, twice)) return std::log(gamma_half_grid(twice));
  if (x < 0.5) return log_gamma(x + 1.0) - std::log(x);
  const double xm = x - 1.0;
  const double t = xm + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (xm + 0.5) * std::log(t) - t +
         std::log(lanczos_sum(xm));
}

/// Bessel function of the first kind J_nu(z), z >= 0.
inline double bessel_j(HalfIntOrder order, double z) {
  using namespace specfun_detail;
  if (!(z >= 0.0)) throw domain_error("bessel_j: argument must be nonnegative");
  if (order.twice_nu() < 0 && z == 0.0) {
    throw domain_error("bessel_j: J_{-1/2} is singular at z = 0");
  }
  const double nu = order.value();
  if (z >= kSeriesLimit) return bessel_large(order, z);
  if (z == 0.0) return order.twice_nu() == 0 ? 1.0 : 0.0;
  // (z/2)^nu / Gamma(nu+1) times the normalized series.
  const double lead = std::pow(0.5 * z, nu) / gamma(nu + 1.0);
  return lead * normalized_series(nu, z);
}

/**
 * Gamma(nu+1) J_nu(z) / (z/2)^nu, continuous at z = 0 where it equals 1.
 *
 * For z < 15 the normalized series is summed directly; no quotient of
 * small quantities is ever formed.
 */
inline double bessel_normalized(HalfIntOrder order, double z) {
  using namespace specfun_detail;
  if (!(z >= 0.0)) throw domain_error("bessel_normalized: argument must be nonnegative");
  if (z == 0.0) return 1.0;
  const double nu = order.value();
  if (z < kSeriesLimit) return normalized_series(nu, z);
  return gamma(nu + 1.0) * bessel_large(order, z) / std::pow(0.5 * z, nu);
}

/// Coefficient of (z/2)^{2n} in the normalized Bessel series, by term-ratio recurrence.
inline double normalized_series_coefficient(HalfIntOrder order, int n) {
  if (n < 0) throw domain_error("normalized_series_coefficient: n must be >= 0");
  const long double nu = order.value();
  long double c = 1.0L;
  for (int m = 1; m <= n; ++m) c *= -1.0L / (static_cast<long double>(m) * (nu + m));
  return static_cast<double>(c);
}

/// Relative residual of Legendre's duplication formula at z.
inline double duplication_residual(double z) {
  if (!(z > 0.0) || 2.0 * z > 50.0) {
    throw domain_error("duplication_residual: need 0 < z and 2z <= 50");
  }
  const double lhs = gamma(2.0 * z);
  const double rhs =
      std::exp2(2.0 * z - 1.0) * gamma(z) * gamma(z + 0.5) / specfun_detail::kSqrtPi;
  return std::fabs(lhs - rhs) / lhs;
}

namespace specfun_detail {

/// The two J_nu evaluation branches, exposed for the overlap-band checks.
inline double bessel_j_series_branch(HalfIntOrder order, double z) {
  if (z == 0.0) return order.twice_nu() == 0 ? 1.0 : 0.0;
  const double nu = order.value();
  return std::pow(0.5 * z, nu) / gamma(nu + 1.0) * normalized_series(nu, z);
}

inline double bessel_j_large_branch(HalfIntOrder order, double z) {
  return bessel_large(order, z);
}

}  // namespace specfun_detail

}  // namespace sphdiff
