/**
 * @file geometry.hpp
 * @brief Dimensional constants and reproducible uniform sampling on spheres.
 *
 * Random source: Philox4x32-10 (128-bit counter, 64-bit key). Each sample
 * index i owns an independent stream whose key is
 *
 *     key = fmix64(seed ^ fmix64(i))
 *
 * where fmix64 is the SplitMix64 finalizer. Point i therefore depends only
 * on (seed, i), independent of evaluation order or thread schedule.
 * Gaussian deviates come from the Marsaglia polar method; one polar attempt
 * consumes one Philox block (two 53-bit uniforms).
 */
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "sphdiff/errors.hpp"
#include "sphdiff/specfun.hpp"

namespace sphdiff {

inline constexpr int kMaxDimension = 12;

/// Ambient dimension, 1 <= d <= 12.
class Dimension {
 public:
  explicit Dimension(int d) : d_(d) {
    if (d < 1 || d > kMaxDimension) {
      throw domain_error("Dimension: d must be in [1, 12], got " + std::to_string(d));
    }
  }
  [[nodiscard]] int value() const noexcept { return d_; }
  [[nodiscard]] HalfIntOrder bessel_order() const { return HalfIntOrder::for_dimension(d_); }

  friend bool operator==(Dimension, Dimension) = default;

 private:
  int d_;
};

/// A point in R^d stored inline; only the first dim() coordinates are meaningful.
class SpherePoint {
 public:
  SpherePoint() = default;
  explicit SpherePoint(int dim) : dim_(dim) {}

  [[nodiscard]] int dim() const noexcept { return dim_; }
  [[nodiscard]] std::span<const double> coords() const noexcept {
    return {data_.data(), static_cast<std::size_t>(dim_)};
  }
  [[nodiscard]] std::span<double> coords() noexcept {
    return {data_.data(), static_cast<std::size_t>(dim_)};
  }
  [[nodiscard]] double norm() const noexcept {
    double acc = 0.0;
    for (double c : coords()) acc += c * c;
    return std::sqrt(acc);
  }

 private:
  std::array<double, kMaxDimension> data_{};
  int dim_ = 0;
};

/// Volume of the closed ball of radius R in R^d.
inline double ball_volume(Dimension d, double R) {
  if (!(R > 0.0)) throw domain_error("ball_volume: R must be positive");
  const double half_d = 0.5 * d.value();
  return std::pow(std::numbers::pi, half_d) * std::pow(R, d.value()) / gamma(half_d + 1.0);
}

/// Product of the angular integrals left after the polar reduction:
/// 2 pi^{(d-1)/2} / Gamma((d-1)/2). Requires d >= 2.
inline double theta_d(Dimension d) {
  if (d.value() < 2) throw domain_error("theta_d: requires d >= 2");
  const double a = 0.5 * (d.value() - 1);
  return 2.0 * std::pow(std::numbers::pi, a) / gamma(a);
}

namespace rng {

/// SplitMix64 finalizer.
constexpr std::uint64_t fmix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

using Block = std::array<std::uint32_t, 4>;

/// Philox4x32 with 10 rounds.
constexpr Block philox4x32_10(Block ctr, std::array<std::uint32_t, 2> key) noexcept {
  constexpr std::uint32_t kM0 = 0xD2511F53u;
  constexpr std::uint32_t kM1 = 0xCD9E8D57u;
  constexpr std::uint32_t kW0 = 0x9E3779B9u;
  constexpr std::uint32_t kW1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kM0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kM1) * ctr[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kW0;
    key[1] += kW1;
  }
  return ctr;
}

/// The per-index stream: sequential Philox blocks under a key mixed from (seed, index).
class IndexStream {
 public:
  IndexStream(std::uint64_t seed, std::uint64_t index) noexcept : index_(index) {
    const std::uint64_t k = fmix64(seed ^ fmix64(index));
    key_ = {static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
  }

  /// Next pair of uniforms in [0, 1) with 53-bit resolution.
  std::array<double, 2> next_uniform_pair() noexcept {
    const Block ctr = {static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
                       static_cast<std::uint32_t>(index_),
                       static_cast<std::uint32_t>(index_ >> 32)};
    ++block_;
    const Block out = philox4x32_10(ctr, key_);
    constexpr double kScale = 0x1.0p-53;
    const std::uint64_t a = (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
    const std::uint64_t b = (static_cast<std::uint64_t>(out[2]) << 32) | out[3];
    return {static_cast<double>(a >> 11) * kScale, static_cast<double>(b >> 11) * kScale};
  }

  /// Two independent standard normal deviates (Marsaglia polar method).
  std::array<double, 2> next_gaussian_pair() noexcept {
    for (;;) {
      const auto [u0, u1] = next_uniform_pair();
      const double x = 2.0 * u0 - 1.0;
      const double y = 2.0 * u1 - 1.0;
      const double s = x * x + y * y;
      if (s >= 1.0 || s == 0.0) continue;
      const double f = std::sqrt(-2.0 * std::log(s) / s);
      return {x * f, y * f};
    }
  }

 private:
  std::array<std::uint32_t, 2> key_{};
  std::uint64_t index_;
  std::uint64_t block_ = 0;
};

}  // namespace rng

/// Sample point `index` of the (seed)-stream on the radius sphere in R^d.
inline SpherePoint sphere_point(Dimension d, double radius, std::uint64_t seed,
                                std::uint64_t index) {
  SpherePoint p(d.value());
  rng::IndexStream stream(seed, index);
  auto c = p.coords();
  for (;;) {
    for (std::size_t j = 0; j < c.size(); j += 2) {
      const auto g = stream.next_gaussian_pair();
      c[j] = g[0];
      if (j + 1 < c.size()) c[j + 1] = g[1];
    }
    const double n = p.norm();
    if (n > 0.0) {
      const double scale = radius / n;
      for (double& v : c) v *= scale;
      return p;
    }
  }
}

/// n points uniformly distributed on the radius sphere in R^d.
inline std::vector<SpherePoint> sample_sphere(Dimension d, double radius, std::size_t n,
                                              std::uint64_t seed) {
  if (n < 1) throw domain_error("sample_sphere: n must be >= 1");
  if (!(radius > 0.0)) throw domain_error("sample_sphere: radius must be positive");
  std::vector<SpherePoint> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(sphere_point(d, radius, seed, i));
  return out;
}

}  // namespace sphdiff
