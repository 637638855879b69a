#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "errors.hpp"

namespace oscquad {

/// Nodes and weights of an m-point rule on [-1,1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss–Legendre rule by Newton iteration on the three-term recurrence.
inline GaussRule gauss_legendre_rule(int m) {
  if (m < 1) fail(ErrorKind::Parameter, "Gauss-Legendre rule needs m >= 1");
  GaussRule r;
  r.nodes.resize(static_cast<std::size_t>(m));
  r.weights.resize(static_cast<std::size_t>(m));
  const int half = (m + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 1; k <= m; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p2) / k;
      }
      dp = m * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0, p1 = 0.0;
    for (int k = 1; k <= m; ++k) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p2) / k;
    }
    dp = m * (x * p0 - p1) / (x * x - 1.0);
    const double wgt = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[static_cast<std::size_t>(i)] = -x;
    r.nodes[static_cast<std::size_t>(m - 1 - i)] = x;
    r.weights[static_cast<std::size_t>(i)] = wgt;
    r.weights[static_cast<std::size_t>(m - 1 - i)] = wgt;
  }
  if (m % 2 == 1) r.nodes[static_cast<std::size_t>(m / 2)] = 0.0;
  return r;
}

/// Apply a [-1,1] rule to ∫_a^b f.
template <class F>
auto apply_rule(const GaussRule& rule, F&& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  using R = decltype(f(c));
  R acc{};
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) acc += rule.weights[i] * f(c + h * rule.nodes[i]);
  return acc * h;
}

}  // namespace oscquad
