#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "sphdiff/errors.hpp"

namespace sphdiff {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule by Newton iteration on P_n from the Chebyshev guess.
inline GaussLegendreRule gauss_legendre(int n) {
  if (n < 1) throw domain_error("gauss_legendre: need at least one node");
  GaussLegendreRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    long double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    long double dp = 0.0L;
    for (int iter = 0; iter < 100; ++iter) {
      long double p0 = 1.0L;
      long double p1 = x;
      for (int j = 2; j <= n; ++j) {
        const long double p2 = ((2.0L * j - 1.0L) * x * p1 - (j - 1.0L) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0L);
      const long double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-19L) break;
    }
    if (n == 1) {
      x = 0.0L;
      dp = 1.0L;
    }
    const long double w = 2.0L / ((1.0L - x * x) * dp * dp);
    rule.nodes[i] = static_cast<double>(-x);
    rule.nodes[n - 1 - i] = static_cast<double>(x);
    rule.weights[i] = rule.weights[n - 1 - i] = static_cast<double>(w);
  }
  return rule;
}

}  // namespace sphdiff
