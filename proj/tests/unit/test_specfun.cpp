#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "sphdiff/oracle.hpp"
#include "sphdiff/specfun.hpp"
#include "sphdiff/verify.hpp"

using sphdiff::HalfIntOrder;
using sphdiff::verify::linspace;

namespace {
constexpr double kSqrtPi = 1.7724538509055160272981674833411451828;

// Frozen from the 100-digit series oracle (oracle.hpp), cross-checked against mpmath.
constexpr double kJ0At2Pi = 0.220276908539934462276881650721;
constexpr double kJHalfAt1 = 0.67139670714180309041636401204;
constexpr double kJ0FirstZero = 2.40482555769577276862163187933;
}  // namespace

TEST_CASE("gamma at the anchor values", "[specfun]") {
  CHECK(sphdiff::gamma(0.5) == Catch::Approx(kSqrtPi).epsilon(1e-15));
  CHECK(sphdiff::gamma(1.0) == 1.0);
  CHECK(sphdiff::gamma(2.0) == 1.0);
  CHECK(sphdiff::gamma(2.5) == Catch::Approx(0.75 * kSqrtPi).epsilon(1e-15));
}

TEST_CASE("gamma rejects nonpositive arguments", "[specfun]") {
  CHECK_THROWS_AS(sphdiff::gamma(0.0), sphdiff::domain_error);
  CHECK_THROWS_AS(sphdiff::gamma(-1.5), sphdiff::domain_error);
  CHECK_THROWS_AS(sphdiff::gamma(std::nan("")), sphdiff::domain_error);
}

TEST_CASE("gamma relative accuracy on (0, 50]", "[specfun]") {
  double worst = 0.0;
  for (double x = 0.003; x <= 50.0; x += 0.0173) {
    worst = std::max(worst, std::fabs(sphdiff::gamma(x) / std::tgamma(x) - 1.0));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("gamma is exact on the half-integer grid", "[specfun]") {
  for (int twice = 1; twice <= 100; ++twice) {
    const double wide = static_cast<double>(sphdiff::oracle::gamma_half(twice));
    CHECK(std::fabs(sphdiff::gamma(0.5 * twice) / wide - 1.0) < 1e-14);
  }
}

TEST_CASE("gamma recurrence", "[specfun][property]") {
  for (double x = 0.5; x <= 20.0; x += 0.5) {
    const double rel = std::fabs(sphdiff::gamma(x + 1.0) - x * sphdiff::gamma(x)) / sphdiff::gamma(x + 1.0);
    CHECK(rel < 1e-13);
  }
}

TEST_CASE("log_gamma agrees with std::lgamma", "[specfun]") {
  for (double x = 0.05; x <= 60.0; x += 0.37) {
    CHECK(sphdiff::log_gamma(x) == Catch::Approx(std::lgamma(x)).epsilon(1e-13).margin(1e-14));
  }
}

TEST_CASE("HalfIntOrder bounds", "[specfun]") {
  CHECK_THROWS_AS(HalfIntOrder(-2), sphdiff::domain_error);
  CHECK(HalfIntOrder(-1).value() == -0.5);
  CHECK(HalfIntOrder::for_dimension(2).twice_nu() == 0);
  CHECK(HalfIntOrder::for_dimension(3).is_half_integer());
}

TEST_CASE("bessel_j examples", "[specfun]") {
  CHECK(sphdiff::bessel_j(HalfIntOrder(0), 0.0) == 1.0);
  CHECK(sphdiff::bessel_j(HalfIntOrder(4), 0.0) == 0.0);

  const double closed = std::sqrt(2.0 / std::numbers::pi) * std::sin(1.0);
  CHECK(std::fabs(sphdiff::oracle::bessel_j_series(1, 1.0) - closed) < 1e-15);
  CHECK(std::fabs(kJHalfAt1 - closed) < 1e-15);
  CHECK(std::fabs(sphdiff::bessel_j(HalfIntOrder(1), 1.0) - kJHalfAt1) < 1e-14);

  const double z0 = sphdiff::oracle::first_zero_j0();
  CHECK(std::fabs(z0 - kJ0FirstZero) < 1e-14);
  CHECK(std::fabs(sphdiff::bessel_j(HalfIntOrder(0), z0)) < 1e-10);
}

TEST_CASE("bessel_j errors", "[specfun]") {
  CHECK_THROWS_AS(sphdiff::bessel_j(HalfIntOrder(0), -0.1), sphdiff::domain_error);
  CHECK_THROWS_AS(sphdiff::bessel_j(HalfIntOrder(-1), 0.0), sphdiff::domain_error);
  CHECK_NOTHROW(sphdiff::bessel_j(HalfIntOrder(-1), 1e-300));
}

TEST_CASE("bessel_j absolute accuracy against the wide series", "[specfun]") {
  double worst = 0.0;
  for (int twice = -1; twice <= 14; ++twice) {
    for (double z : linspace(0.05, 100.0, 120)) {
      worst = std::max(worst, std::fabs(sphdiff::bessel_j(HalfIntOrder(twice), z) -
                                        sphdiff::oracle::bessel_j_series(twice, z)));
    }
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("bessel_j three-term recurrence", "[specfun][property]") {
  for (int twice = 0; twice <= 10; ++twice) {
    const double nu = 0.5 * twice;
    for (double z : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0}) {
      const double below = twice == 0 ? -sphdiff::bessel_j(HalfIntOrder(2), z)
                                      : sphdiff::bessel_j(HalfIntOrder(twice - 2), z);
      const double above = sphdiff::bessel_j(HalfIntOrder(twice + 2), z);
      const double mid = sphdiff::bessel_j(HalfIntOrder(twice), z);
      INFO("nu=" << nu << " z=" << z);
      CHECK(std::fabs(below + above - 2.0 * nu / z * mid) < 1e-10);
    }
  }
}

TEST_CASE("half-integer closed forms", "[specfun][property]") {
  for (double z : linspace(0.1, 50.0, 997)) {
    const double amp = std::sqrt(2.0 / (std::numbers::pi * z));
    CHECK(std::fabs(sphdiff::bessel_j(HalfIntOrder(1), z) - amp * std::sin(z)) < 1e-12);
    CHECK(std::fabs(sphdiff::bessel_j(HalfIntOrder(-1), z) - amp * std::cos(z)) < 1e-12);
  }
}

TEST_CASE("series and large-argument branches agree on [14, 16]", "[specfun]") {
  using namespace sphdiff::specfun_detail;
  double worst = 0.0;
  for (int twice = -1; twice <= 14; ++twice) {
    for (double z : linspace(14.0, 16.0, 401)) {
      worst = std::max(worst, std::fabs(bessel_j_series_branch(HalfIntOrder(twice), z) -
                                        bessel_j_large_branch(HalfIntOrder(twice), z)));
    }
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("bessel_normalized examples", "[specfun]") {
  for (int twice = -1; twice <= 14; ++twice) CHECK(sphdiff::bessel_normalized(HalfIntOrder(twice), 0.0) == 1.0);
  CHECK(std::fabs(sphdiff::bessel_normalized(HalfIntOrder(1), std::numbers::pi)) < 1e-15);
  CHECK(std::fabs(sphdiff::bessel_normalized(HalfIntOrder(0), 2.0 * std::numbers::pi) - kJ0At2Pi) < 1e-15);
  CHECK(std::fabs(sphdiff::oracle::bessel_j_series(0, 2.0 * std::numbers::pi) - kJ0At2Pi) < 1e-15);
}

TEST_CASE("bessel_normalized matches Gamma(nu+1) J_nu / (z/2)^nu", "[specfun]") {
  for (int twice = -1; twice <= 14; ++twice) {
    const HalfIntOrder order(twice);
    const double nu = order.value();
    for (double z : linspace(0.01, 100.0, 300)) {
      const double ratio = sphdiff::gamma(nu + 1.0) * sphdiff::bessel_j(order, z) / std::pow(0.5 * z, nu);
      CHECK(std::fabs(sphdiff::bessel_normalized(order, z) - ratio) <= 1e-10);
    }
  }
}

TEST_CASE("bessel_normalized is continuous at the origin", "[specfun]") {
  for (int twice = -1; twice <= 14; ++twice) {
    const HalfIntOrder order(twice);
    CHECK(sphdiff::bessel_normalized(order, 1e-9) == Catch::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("bessel_normalized is bounded by one", "[specfun][property]") {
  double excess = 0.0;
  for (int twice = -1; twice <= 14; ++twice) {
    for (double z : linspace(0.0, 100.0, 20001)) {
      excess = std::max(excess, std::fabs(sphdiff::bessel_normalized(HalfIntOrder(twice), z)) - 1.0);
    }
  }
  CHECK(excess <= 1e-12);
}

TEST_CASE("duplication residual", "[specfun]") {
  CHECK(sphdiff::duplication_residual(0.5) < 1e-13);
  CHECK(sphdiff::duplication_residual(1.0) < 1e-13);
  for (int m = 1; m <= 10; ++m) CHECK(sphdiff::duplication_residual(m + 0.5) < 1e-12);
  for (double z : linspace(0.2, 20.0, 100)) CHECK(sphdiff::duplication_residual(z) < 1e-12);
  CHECK_THROWS_AS(sphdiff::duplication_residual(0.0), sphdiff::domain_error);
  CHECK_THROWS_AS(sphdiff::duplication_residual(25.5), sphdiff::domain_error);
}

TEST_CASE("normalized series coefficients", "[specfun]") {
  // nu = 0: (-1)^n / (n!)^2
  CHECK(sphdiff::normalized_series_coefficient(HalfIntOrder(0), 0) == 1.0);
  CHECK(sphdiff::normalized_series_coefficient(HalfIntOrder(0), 3) == Catch::Approx(-1.0 / 36.0).epsilon(1e-15));
  CHECK_THROWS_AS(sphdiff::normalized_series_coefficient(HalfIntOrder(0), -1), sphdiff::domain_error);
}
