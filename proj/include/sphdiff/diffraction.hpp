/**
 * @file diffraction.hpp
 * @brief Fourier transform of the uniform probability measure on a sphere,
 *        in closed form and by Monte Carlo over seeded sphere samples.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include "sphdiff/autocorr.hpp"
#include "sphdiff/errors.hpp"
#include "sphdiff/geometry.hpp"
#include "sphdiff/parallel.hpp"
#include "sphdiff/specfun.hpp"

namespace sphdiff {

/// Uniform probability measure on the sphere of the given radius in R^d.
class SphereMeasure {
 public:
  SphereMeasure(Dimension d, double radius) : d_(d), radius_(radius) {
    if (!(radius >= 0.0) || !std::isfinite(radius)) {
      throw domain_error("SphereMeasure: radius must be finite and >= 0");
    }
  }
  [[nodiscard]] Dimension dim() const noexcept { return d_; }
  [[nodiscard]] double radius() const noexcept { return radius_; }

 private:
  Dimension d_;
  double radius_;
};

/// Monte Carlo estimate of a complex mean.
struct MCEstimate {
  std::complex<double> value;
  double stderr_real = 0.0;  ///< sample std. deviation of the real parts / sqrt(n)
  double stderr_imag = 0.0;  ///< same for the imaginary parts
  std::size_t n = 0;
  std::uint64_t seed = 0;
};

/// Closed-form transform at |x| = x_norm; the normalized Bessel profile of order d/2 - 1.
inline double sphere_ft_closed(const SphereMeasure& mu, double x_norm) {
  if (!(x_norm >= 0.0)) throw domain_error("sphere_ft_closed: x_norm must be >= 0");
  const double z = (2.0 * std::numbers::pi * mu.radius()) * x_norm;
  return bessel_normalized(mu.dim().bessel_order(), z);
}

namespace diffraction_detail {

/// Running mean and M2 (Welford), merged with Chan's formula.
struct Moments {
  double n = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double v) {
    n += 1.0;
    const double delta = v - mean;
    mean += delta / n;
    m2 += delta * (v - mean);
  }
  void merge(const Moments& o) {
    if (o.n == 0.0) return;
    if (n == 0.0) {
      *this = o;
      return;
    }
    const double total = n + o.n;
    const double delta = o.mean - mean;
    mean += delta * (o.n / total);
    m2 += o.m2 + delta * delta * (n * o.n / total);
    n = total;
  }
};

inline constexpr std::size_t kChunk = 1 << 14;

}  // namespace diffraction_detail

/**
 * (1/n) sum_i exp(-2 pi i <x, y_i>) over sphere samples y_i.
 *
 * Samples are grouped in fixed chunks of 16384 indices whose moments are
 * merged in chunk order, so the result is identical for any thread count.
 */
inline MCEstimate sphere_ft_mc(const SphereMeasure& mu, std::span<const double> x, std::size_t n,
                               std::uint64_t seed) {
  using diffraction_detail::kChunk;
  using diffraction_detail::Moments;
  if (n < 100) throw domain_error("sphere_ft_mc: n must be >= 100");
  if (static_cast<int>(x.size()) != mu.dim().value()) {
    throw domain_error("sphere_ft_mc: x must have d coordinates");
  }
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  std::vector<Moments> re_parts(chunks), im_parts(chunks);
  const double radius = mu.radius();
  const auto d = mu.dim();
  parallel_for(chunks, [&](std::size_t c) {
    const std::size_t begin = c * kChunk;
    const std::size_t end = std::min(n, begin + kChunk);
    Moments re;
    Moments im;
    for (std::size_t i = begin; i < end; ++i) {
      double dot = 0.0;
      if (radius > 0.0) {
        const SpherePoint y = sphere_point(d, radius, seed, i);
        const auto yc = y.coords();
        for (std::size_t j = 0; j < yc.size(); ++j) dot += x[j] * yc[j];
      }
      const double phase = -2.0 * std::numbers::pi * dot;
      re.add(std::cos(phase));
      im.add(std::sin(phase));
    }
    re_parts[c] = re;
    im_parts[c] = im;
  });
  Moments re;
  Moments im;
  for (std::size_t c = 0; c < chunks; ++c) {
    re.merge(re_parts[c]);
    im.merge(im_parts[c]);
  }
  const double nn = static_cast<double>(n);
  MCEstimate est;
  est.value = {re.mean, im.mean};
  est.stderr_real = std::sqrt(re.m2 / (nn - 1.0)) / std::sqrt(nn);
  est.stderr_imag = std::sqrt(im.m2 / (nn - 1.0)) / std::sqrt(nn);
  est.n = n;
  est.seed = seed;
  return est;
}

/// Largest |eta_closed(wave, s) - sphere_ft_closed(mu_k, s)| over the grid.
inline double roundtrip_check(const WaveSpec& wave, std::span<const double> s_grid) {
  const SphereMeasure mu(wave.dim(), wave.k());
  double worst = 0.0;
  for (double s : s_grid) {
    worst = std::max(worst, std::fabs(eta_closed(wave, s) - sphere_ft_closed(mu, s)));
  }
  return worst;
}

}  // namespace sphdiff
