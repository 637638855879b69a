#pragma once

/**
 * @file cheb.hpp
 * @brief Chebyshev collocation grids on [0,a].
 *
 * Radau family: reference points t_j = -cos(2jπ/(2n-1)), j = 0..n-1 (t_0 = -1),
 * mapped by x(t) = a(1-t)/2 so that x_j = x(t_{n-j}), j = 1..n, with x_n = a.
 * The origin x_0 = 0 (t = 1) is not a Radau point; values there come from
 * extrapolating the degree n-1 interpolant.
 *
 * Lobatto family: x_j = a(1 - cos(jπ/n))/2, j = 0..n.
 */

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <vector>

#include "errors.hpp"

namespace oscquad {

enum class GridFamily { RadauModified, LobattoModified };

struct ChebGrid {
  GridFamily family = GridFamily::RadauModified;
  int n = 0;
  double a = 1.0;
  /// x_0 = 0 < x_1 < ... < x_n = a.
  std::vector<double> nodes;
  /// d/dx on the collocation unknowns: nodes[1..n] (Radau) or all nodes (Lobatto).
  Eigen::MatrixXd diff;
  /// d/dx on all n+1 nodes.
  Eigen::MatrixXd full_diff;
  /// Radau only: q(0) = Σ_j origin_weights[j-1] q(x_j), exact for deg q <= n-1.
  std::vector<double> origin_weights;
  /// Barycentric weights over all n+1 nodes.
  std::vector<double> bary_weights;

  std::size_t size() const { return nodes.size(); }
};

/// Barycentric weights 1/Π_{k≠j}(x_j - x_k), rescaled to max |w| = 1.
inline std::vector<double> barycentric_weights(std::span<const double> x) {
  const std::size_t m = x.size();
  if (m == 0) return {};
  const double span_len = x.back() - x.front();
  const double scale = span_len > 0.0 ? 4.0 / span_len : 1.0;
  std::vector<double> w(m, 1.0);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = 0; k < m; ++k) {
      if (k != j) w[j] /= scale * (x[j] - x[k]);
    }
  }
  double big = 0.0;
  for (double v : w) big = std::max(big, std::abs(v));
  for (double& v : w) v /= big;
  return w;
}

/// Differentiation matrix of the interpolant through the given points.
inline Eigen::MatrixXd barycentric_diff(std::span<const double> x) {
  const auto w = barycentric_weights(x);
  const Eigen::Index m = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    double diag = 0.0;
    for (Eigen::Index j = 0; j < m; ++j) {
      if (i == j) continue;
      d(i, j) = (w[static_cast<std::size_t>(j)] / w[static_cast<std::size_t>(i)]) /
                (x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(j)]);
      diag -= d(i, j);
    }
    d(i, i) = diag;
  }
  return d;
}

/// Lagrange basis values ℓ_j(x) for the given points.
inline std::vector<double> lagrange_at(std::span<const double> pts, double x) {
  const auto w = barycentric_weights(pts);
  std::vector<double> out(pts.size(), 0.0);
  for (std::size_t j = 0; j < pts.size(); ++j) {
    if (x == pts[j]) {
      out[j] = 1.0;
      return out;
    }
  }
  double denom = 0.0;
  for (std::size_t j = 0; j < pts.size(); ++j) {
    out[j] = w[j] / (x - pts[j]);
    denom += out[j];
  }
  for (double& v : out) v /= denom;
  return out;
}

namespace detail {

/// T_k(t) and T_k'(t) by the three-term recurrences (T_k' = k U_{k-1}).
inline std::pair<double, double> chebyshev_t_and_derivative(int k, double t) {
  if (k == 0) return {1.0, 0.0};
  double t0 = 1.0, t1 = t;
  double u0 = 1.0, u1 = 2.0 * t;  // U_0, U_1
  for (int j = 1; j < k; ++j) {
    const double t2 = 2.0 * t * t1 - t0;
    t0 = t1;
    t1 = t2;
  }
  for (int j = 1; j < k - 1; ++j) {
    const double u2 = 2.0 * t * u1 - u0;
    u0 = u1;
    u1 = u2;
  }
  const double u_km1 = (k == 1) ? 1.0 : u1;
  return {t1, static_cast<double>(k) * u_km1};
}

}  // namespace detail

/// Reference Radau points t_j = -cos(2jπ/(2n-1)), j = 0..n-1.
inline std::vector<double> radau_reference_points(int n) {
  std::vector<double> t(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) t[static_cast<std::size_t>(j)] = -std::cos(2.0 * j * std::numbers::pi / (2.0 * n - 1.0));
  t[0] = -1.0;
  return t;
}

/**
 * Closed-form first-derivative matrix on the reference Radau points, built
 * from Q(t) = T_n(t) + T_{n-1}(t) whose roots are exactly those points.
 */
inline Eigen::MatrixXd radau_reference_diff(int n) {
  if (n < 2) fail(ErrorKind::Parameter, "Radau grid needs n >= 2");
  const auto t = radau_reference_points(n);
  std::vector<double> qp(static_cast<std::size_t>(n)), tnm1(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const auto [tn, dtn] = detail::chebyshev_t_and_derivative(n, t[static_cast<std::size_t>(k)]);
    const auto [tm, dtm] = detail::chebyshev_t_and_derivative(n - 1, t[static_cast<std::size_t>(k)]);
    (void)tn;
    qp[static_cast<std::size_t>(k)] = dtn + dtm;
    tnm1[static_cast<std::size_t>(k)] = tm;
  }
  Eigen::MatrixXd d(n, n);
  for (int k = 0; k < n; ++k) {
    const double tk = t[static_cast<std::size_t>(k)];
    for (int j = 0; j < n; ++j) {
      if (k == j) {
        if (k == 0) {
          d(k, j) = -static_cast<double>(n) * (n - 1) / 3.0;
        } else {
          const double s = 1.0 - tk * tk;
          d(k, j) = tk / (2.0 * s) + (2.0 * n - 1.0) * tnm1[static_cast<std::size_t>(k)] / (2.0 * s * qp[static_cast<std::size_t>(k)]);
        }
      } else {
        d(k, j) = qp[static_cast<std::size_t>(k)] / qp[static_cast<std::size_t>(j)] / (tk - t[static_cast<std::size_t>(j)]);
      }
    }
  }
  return d;
}

/// Extrapolation weights to t = 1 in the closed form; entry j-1 multiplies q(x_j).
inline std::vector<double> radau_origin_weights(int n) {
  std::vector<double> r(static_cast<std::size_t>(n), 0.0);
  const double inv = 1.0 / (2.0 * n - 1.0);
  // x_n = a corresponds to t_0 = -1
  r[static_cast<std::size_t>(n - 1)] = inv * std::cos((n - 1) * std::numbers::pi);
  for (int j = 1; j <= n - 1; ++j) {
    // x_{n-j} corresponds to t_j
    r[static_cast<std::size_t>(n - j - 1)] =
        2.0 * inv * std::cos((n - 1 - j) * std::numbers::pi) / std::cos(j * std::numbers::pi / (2.0 * n - 1.0));
  }
  return r;
}

inline ChebGrid radau_grid(int n, double a) {
  if (n < 2) fail(ErrorKind::Parameter, "Radau grid needs n >= 2");
  if (!(a > 0.0)) fail(ErrorKind::Parameter, "grid interval end must be positive");
  ChebGrid g;
  g.family = GridFamily::RadauModified;
  g.n = n;
  g.a = a;
  const auto t = radau_reference_points(n);
  g.nodes.resize(static_cast<std::size_t>(n) + 1);
  g.nodes[0] = 0.0;
  for (int j = 1; j <= n; ++j) g.nodes[static_cast<std::size_t>(j)] = 0.5 * a * (1.0 - t[static_cast<std::size_t>(n - j)]);
  g.nodes[static_cast<std::size_t>(n)] = a;
  const std::span<const double> interior(g.nodes.data() + 1, static_cast<std::size_t>(n));
  g.diff = barycentric_diff(interior);
  g.full_diff = barycentric_diff(g.nodes);
  g.origin_weights = radau_origin_weights(n);
  g.bary_weights = barycentric_weights(g.nodes);
  return g;
}

inline ChebGrid lobatto_grid(int n, double a) {
  if (n < 2) fail(ErrorKind::Parameter, "Lobatto grid needs n >= 2");
  if (!(a > 0.0)) fail(ErrorKind::Parameter, "grid interval end must be positive");
  ChebGrid g;
  g.family = GridFamily::LobattoModified;
  g.n = n;
  g.a = a;
  g.nodes.resize(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) g.nodes[static_cast<std::size_t>(j)] = 0.5 * a * (1.0 - std::cos(j * std::numbers::pi / n));
  g.nodes[0] = 0.0;
  g.nodes[static_cast<std::size_t>(n)] = a;
  g.diff = barycentric_diff(g.nodes);
  g.full_diff = g.diff;
  g.bary_weights = barycentric_weights(g.nodes);
  return g;
}

/// Value at x of the polynomial interpolating `values` on all grid nodes.
template <class T>
T barycentric_eval(const ChebGrid& grid, std::span<const T> values, double x) {
  if (values.size() != grid.nodes.size()) fail(ErrorKind::Parameter, "barycentric_eval: value count does not match node count");
  T num{};
  double den = 0.0;
  for (std::size_t j = 0; j < grid.nodes.size(); ++j) {
    const double dx = x - grid.nodes[j];
    if (dx == 0.0) return values[j];
    const double c = grid.bary_weights[j] / dx;
    num += c * values[j];
    den += c;
  }
  return num / den;
}

inline std::complex<double> barycentric_eval(const ChebGrid& grid, const std::vector<std::complex<double>>& values, double x) {
  return barycentric_eval<std::complex<double>>(grid, std::span<const std::complex<double>>(values), x);
}

inline double barycentric_eval(const ChebGrid& grid, const std::vector<double>& values, double x) {
  return barycentric_eval<double>(grid, std::span<const double>(values), x);
}

}  // namespace oscquad
