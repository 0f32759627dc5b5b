#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "sphdiff/autocorr.hpp"
#include "sphdiff/taylor.hpp"

using sphdiff::Dimension;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kPi2 = kPi * kPi;
}  // namespace

TEST_CASE("taylor examples", "[taylor]") {
  CHECK(sphdiff::h_deriv_at_zero(Dimension(2), 1) == 0.0);
  for (int d = 1; d <= 12; ++d) {
    CHECK(sphdiff::h_deriv_at_zero(Dimension(d), 0) == Catch::Approx(1.0).epsilon(1e-15));
    CHECK(sphdiff::taylor_coefficient(Dimension(d), 0).value == Catch::Approx(1.0).epsilon(1e-15));
  }
  CHECK(sphdiff::h_deriv_at_zero(Dimension(2), 2) == Catch::Approx(-2.0 * kPi2).epsilon(1e-13));
  CHECK(sphdiff::taylor_coefficient(Dimension(2), 2).value == Catch::Approx(-kPi2).epsilon(1e-13));
  CHECK(sphdiff::taylor_coefficient(Dimension(3), 2).value == Catch::Approx(-2.0 * kPi2 / 3.0).epsilon(1e-13));
}

TEST_CASE("odd orders vanish exactly", "[taylor]") {
  for (int d = 1; d <= 12; ++d) {
    for (int m = 1; m <= sphdiff::kMaxTaylorOrder; m += 2) {
      CHECK(sphdiff::h_deriv_at_zero(Dimension(d), m) == 0.0);
      CHECK(sphdiff::taylor_coefficient(Dimension(d), m).value == 0.0);
    }
  }
}

TEST_CASE("derivative and duplication forms agree", "[taylor][property]") {
  for (int d = 1; d <= 12; ++d) {
    for (int m = 0; m <= sphdiff::kMaxTaylorOrder; m += 2) {
      const double a = sphdiff::taylor_coefficient(Dimension(d), m).value;
      const double b = sphdiff::taylor_coefficient_from_derivative(Dimension(d), m).value;
      INFO("d=" << d << " m=" << m);
      CHECK(std::fabs(a - b) <= 1e-12 * std::fabs(a));
    }
  }
}

TEST_CASE("second derivative matches a central difference", "[taylor]") {
  constexpr double h = 1e-4;
  for (int d : {1, 2, 3, 5}) {
    const sphdiff::WaveSpec w(Dimension(d), 1.0);
    // h is even in s, so h(-step) = h(step)
    const double fd = 2.0 * (sphdiff::eta_closed(w, h) - sphdiff::eta_closed(w, 0.0)) / (h * h);
    const double exact = sphdiff::h_deriv_at_zero(Dimension(d), 2);
    INFO("d=" << d);
    CHECK(std::fabs(fd - exact) <= 1e-4 * std::fabs(exact));
  }
}

TEST_CASE("partial sums converge to the closed form", "[taylor]") {
  for (int d = 1; d <= 6; ++d) {
    const sphdiff::WaveSpec w(Dimension(d), 1.0);
    const double target = sphdiff::eta_closed(w, 0.5);
    INFO("d=" << d);
    CHECK(std::fabs(sphdiff::taylor_partial_sum(Dimension(d), 0.5, 20) - target) < 1e-10);
  }
}

TEST_CASE("compare_with_bessel_series", "[taylor]") {
  CHECK(sphdiff::compare_with_bessel_series(Dimension(2), 20) < 1e-12);
  CHECK(sphdiff::compare_with_bessel_series(Dimension(3), 20) < 1e-12);
  for (int d = 1; d <= 12; ++d) CHECK(sphdiff::compare_with_bessel_series(Dimension(d), 40) < 1e-12);
  CHECK_THROWS_AS(sphdiff::compare_with_bessel_series(Dimension(2), 41), sphdiff::domain_error);
  CHECK_THROWS_AS(sphdiff::compare_with_bessel_series(Dimension(2), 7), sphdiff::domain_error);
  CHECK_THROWS_AS(sphdiff::taylor_coefficient(Dimension(2), 41), sphdiff::domain_error);
  CHECK_THROWS_AS(sphdiff::h_deriv_at_zero(Dimension(2), -1), sphdiff::domain_error);
}

TEST_CASE("d = 1 coefficients are those of cos(2 pi s)", "[taylor]") {
  double factorial = 1.0;
  for (int n = 0; 2 * n <= sphdiff::kMaxTaylorOrder; ++n) {
    if (n > 0) factorial *= (2.0 * n - 1.0) * (2.0 * n);
    const double expected = (n % 2 == 0 ? 1.0 : -1.0) * std::pow(2.0 * kPi, 2.0 * n) / factorial;
    INFO("n=" << n);
    CHECK(sphdiff::taylor_coefficient(Dimension(1), 2 * n).value == Catch::Approx(expected).epsilon(1e-12));
  }
}
