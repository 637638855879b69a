#pragma once

/**
 * @file levin.hpp
 * @brief Collocation solvers for the singularity-separated Levin equation
 *
 *   W[c0,q1](x) := iw g'(x) c0 + g(x) q1'(x) + (1 + α + iw g(x)) g'(x) q1(x) = F(x).
 *
 * Physical space (s = 0): unknowns [c0, q1(x_1), ..., q1(x_n)] on the modified
 * Radau grid, q1(0) extrapolated from the Radau values. Row 0 is the equation
 * at x = 0 where the g q1' term vanishes.
 *
 * Frequency space (any s): q1 = Σ c_k φ_k in a Chebyshev or powers-of-g basis,
 * with W and its derivatives matched to Hermite data.
 */

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <vector>

#include "cheb.hpp"
#include "errors.hpp"
#include "hermite.hpp"
#include "problem.hpp"
#include "series.hpp"
#include "tsvd.hpp"

namespace oscquad {

struct LevinSolution {
  Complex c0;
  /// q1 at the collocation nodes x_1..x_n.
  std::vector<Complex> q1_values;
  /// q1(0) from the origin extrapolation.
  Complex q1_origin;
  double residual_norm = 0.0;
  int tsvd_truncated = 0;
  double smallest_sv = 0.0;
  double largest_sv = 0.0;
};

struct LevinSystem {
  Eigen::MatrixXcd matrix;
  Eigen::VectorXcd rhs;
};

namespace detail {

inline void require_radau(const ChebGrid& grid) {
  if (grid.family != GridFamily::RadauModified) fail(ErrorKind::Parameter, "physical-space Levin needs a Radau grid");
}

inline Complex origin_value(const ChebGrid& grid, const Eigen::VectorXcd& sol) {
  Complex acc(0.0);
  for (int j = 1; j <= grid.n; ++j) acc += grid.origin_weights[static_cast<std::size_t>(j - 1)] * sol(j);
  return acc;
}

}  // namespace detail

/// Collocation matrix of W on {0} ∪ Radau nodes.
inline Eigen::MatrixXcd levin_operator(const ProblemSpec& p, const ChebGrid& grid) {
  detail::require_radau(grid);
  const int n = grid.n;
  const Complex iw(0.0, p.w);
  const double alpha = p.alpha;
  Eigen::MatrixXcd l = Eigen::MatrixXcd::Zero(n + 1, n + 1);

  const double gp0 = p.oscillator.derivative(0.0, 1);
  if (!(gp0 > 0.0)) fail(ErrorKind::InvalidOscillator, "g'(0) must be positive");
  l(0, 0) = iw * gp0;
  for (int j = 1; j <= n; ++j) l(0, j) = (1.0 + alpha) * gp0 * grid.origin_weights[static_cast<std::size_t>(j - 1)];

  for (int i = 1; i <= n; ++i) {
    const double x = grid.nodes[static_cast<std::size_t>(i)];
    const RSeries gs = p.oscillator.taylor(x, 1);
    const double gx = gs[0], gpx = gs[1];
    if (!(gpx > 0.0)) fail(ErrorKind::InvalidOscillator, "g' is not positive at a collocation node");
    l(i, 0) = iw * gpx;
    for (int j = 1; j <= n; ++j) l(i, j) = gx * grid.diff(i - 1, j - 1);
    l(i, i) += (1.0 + alpha + iw * gx) * gpx;
  }
  return l;
}

inline LevinSystem assemble_L(const ProblemSpec& p, const ChebGrid& grid) {
  LevinSystem sys;
  sys.matrix = levin_operator(p, grid);
  sys.rhs.resize(grid.n + 1);
  for (int i = 0; i <= grid.n; ++i) sys.rhs(i) = f1_value(p, grid.nodes[static_cast<std::size_t>(i)]);
  return sys;
}

/// Solve L [c0, q1] = rhs and package the result.
inline LevinSolution solve_levin_system(const Eigen::MatrixXcd& l, const Eigen::VectorXcd& rhs, const ChebGrid& grid,
                                        const TsvdOptions& opt = {}) {
  const TsvdResult r = tsvd_solve(l, rhs, opt);
  LevinSolution s;
  s.c0 = r.x(0);
  s.q1_values.assign(r.x.data() + 1, r.x.data() + r.x.size());
  s.q1_origin = detail::origin_value(grid, r.x);
  s.residual_norm = (l * r.x - rhs).cwiseAbs().maxCoeff();
  s.tsvd_truncated = r.truncated;
  s.smallest_sv = r.smallest_sv;
  s.largest_sv = r.largest_sv;
  return s;
}

/// Physical-space solve of W[c0,q1] = f1 on the n-point Radau grid.
inline LevinSolution solve_alg(const ProblemSpec& p, const ChebGrid& grid, const TsvdOptions& opt = {}) {
  const LevinSystem sys = assemble_L(p, grid);
  return solve_levin_system(sys.matrix, sys.rhs, grid, opt);
}

inline LevinSolution solve_alg(const ProblemSpec& p, int n, const TsvdOptions& opt = {}) {
  return solve_alg(p, radau_grid(n, p.a), opt);
}

/**
 * Log case: (c0,q1) from W = f1, then (d0,l1) from W = -q1 g' with the same
 * operator. The origin row uses q1(0) from the extrapolation weights.
 */
inline std::pair<LevinSolution, LevinSolution> solve_log(const ProblemSpec& p, const ChebGrid& grid,
                                                         const TsvdOptions& opt = {}) {
  if (p.kind != SingularityKind::AlgebraicLog) fail(ErrorKind::Parameter, "solve_log needs an AlgebraicLog problem");
  const LevinSystem sys = assemble_L(p, grid);
  LevinSolution first = solve_levin_system(sys.matrix, sys.rhs, grid, opt);
  Eigen::VectorXcd rhs2(grid.n + 1);
  rhs2(0) = -first.q1_origin * p.oscillator.derivative(0.0, 1);
  for (int i = 1; i <= grid.n; ++i) {
    rhs2(i) = -first.q1_values[static_cast<std::size_t>(i - 1)] * p.oscillator.derivative(grid.nodes[static_cast<std::size_t>(i)], 1);
  }
  LevinSolution second = solve_levin_system(sys.matrix, rhs2, grid, opt);
  return {std::move(first), std::move(second)};
}

inline std::pair<LevinSolution, LevinSolution> solve_log(const ProblemSpec& p, int n, const TsvdOptions& opt = {}) {
  return solve_log(p, radau_grid(n, p.a), opt);
}

// ---------------------------------------------------------------------------
// Successive approximations
// ---------------------------------------------------------------------------

struct PicardIterate {
  Complex c0;
  /// q1 on all grid nodes x_0..x_n.
  std::vector<Complex> q1_values;
};

/**
 * q1^[0] = 0;  Φ^[k] = (f1 - g D q1^[k-1] - (1+α) g' q1^[k-1]) / (iw g');
 * c0^[k] = Φ^[k](0);  q1^[k] = (Φ^[k] - c0^[k]) / g, with q1^[k](0) = Φ^[k]'(0)/g'(0).
 * Derivatives are spectral on all n+1 grid nodes.
 */
inline std::vector<PicardIterate> picard_iterate(const ProblemSpec& p, const ChebGrid& grid, int k) {
  if (k < 1) fail(ErrorKind::Parameter, "picard_iterate needs k >= 1");
  if (2 * k > grid.n) fail(ErrorKind::Parameter, "picard_iterate: k too large for the grid (need k <= n/2)");
  const std::size_t m = grid.nodes.size();
  Eigen::VectorXcd f1(m), q(m), phi(m);
  Eigen::VectorXd g(m), gp(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double x = grid.nodes[i];
    const RSeries gs = p.oscillator.taylor(x, 1);
    g(static_cast<Eigen::Index>(i)) = gs[0];
    gp(static_cast<Eigen::Index>(i)) = gs[1];
    f1(static_cast<Eigen::Index>(i)) = f1_value(p, x);
  }
  const Complex iw(0.0, p.w);
  q.setZero();
  std::vector<PicardIterate> out;
  for (int it = 1; it <= k; ++it) {
    const Eigen::VectorXcd dq = grid.full_diff.cast<Complex>() * q;
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(m); ++i) {
      phi(i) = (f1(i) - g(i) * dq(i) - (1.0 + p.alpha) * gp(i) * q(i)) / (iw * gp(i));
    }
    const Complex c0 = phi(0);
    const Eigen::VectorXcd dphi = grid.full_diff.cast<Complex>() * phi;
    q(0) = dphi(0) / gp(0);
    for (Eigen::Index i = 1; i < static_cast<Eigen::Index>(m); ++i) q(i) = (phi(i) - c0) / g(i);
    out.push_back({c0, std::vector<Complex>(q.data(), q.data() + q.size())});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Frequency-space Hermite collocation
// ---------------------------------------------------------------------------

enum class LevinBasis { Chebyshev, PowersOfG };

struct FrequencyLevinSolution {
  Complex c0;
  std::vector<Complex> coeffs;
  LevinBasis basis = LevinBasis::Chebyshev;
  double residual_norm = 0.0;
  int tsvd_truncated = 0;
  double smallest_sv = 0.0;
};

namespace detail {

/// Jets of the first `count` basis functions about x.
inline std::vector<RSeries> basis_jets(const ProblemSpec& p, LevinBasis basis, int count, double x, std::size_t order) {
  std::vector<RSeries> out;
  out.reserve(static_cast<std::size_t>(count));
  if (basis == LevinBasis::Chebyshev) {
    RSeries y = RSeries::variable(2.0 * x / p.a - 1.0, order);
    if (order >= 1) y[1] = 2.0 / p.a;
    RSeries t0(order, 1.0), t1 = y;
    for (int k = 0; k < count; ++k) {
      if (k == 0) {
        out.push_back(t0);
      } else if (k == 1) {
        out.push_back(t1);
      } else {
        RSeries t2 = 2.0 * (y * t1) - t0;
        t0 = t1;
        t1 = t2;
        out.push_back(t1);
      }
    }
  } else {
    const RSeries g = p.oscillator.taylor(x, order) / p.g_at_end();
    RSeries pw(order, 1.0);
    for (int k = 0; k < count; ++k) {
      out.push_back(pw);
      pw = pw * g;
    }
  }
  return out;
}

/// Jets of W[c0=1, 0] and W[0, φ_k], orders 0..order, about x.
inline std::vector<CSeries> operator_columns(const ProblemSpec& p, LevinBasis basis, int count, double x, std::size_t order) {
  const RSeries g = p.oscillator.taylor(x, order + 1);
  const RSeries gp = differentiate(g);  // order `order`
  const Complex iw(0.0, p.w);
  const CSeries gc = to_complex(g.truncated(order));
  const CSeries gpc = to_complex(gp);
  std::vector<CSeries> cols;
  cols.push_back(gpc * iw);
  const auto phis = basis_jets(p, basis, count, x, order + 1);
  const CSeries coef = ((1.0 + p.alpha) + gc * iw) * gpc;
  for (const RSeries& ph : phis) {
    const CSeries phc = to_complex(ph);
    cols.push_back(gc * to_complex(differentiate(ph)) + coef * to_complex(ph.truncated(order)));
  }
  return cols;
}

}  // namespace detail

/// q1 (or l1) jet about x from basis coefficients.
inline CSeries frequency_q1_jet(const ProblemSpec& p, const FrequencyLevinSolution& sol, double x, std::size_t order) {
  const auto phis = detail::basis_jets(p, sol.basis, static_cast<int>(sol.coeffs.size()), x, order);
  CSeries acc(order);
  for (std::size_t k = 0; k < phis.size(); ++k) acc += to_complex(phis[k]) * sol.coeffs[k];
  return acc;
}

inline Complex frequency_q1_value(const ProblemSpec& p, const FrequencyLevinSolution& sol, double x) {
  return frequency_q1_jet(p, sol, x, 0)[0];
}

/**
 * Solve d^j W[c0,q1]/dx^j (x_l) = target^{(j)}(x_l) with q1 in span of the first
 * M = conditions - 1 basis functions. Rows are taken in Taylor-coefficient form
 * and equilibrated before the TSVD solve.
 */
inline FrequencyLevinSolution solve_frequency(const ProblemSpec& p, const HermiteData& target, LevinBasis basis,
                                              const TsvdOptions& opt = {}) {
  const int rows = target.conditions();
  const int nbasis = rows - 1;
  if (nbasis < 1) fail(ErrorKind::Parameter, "frequency-space Levin needs at least two conditions");
  Eigen::MatrixXcd a(rows, rows);
  Eigen::VectorXcd b(rows);
  Eigen::VectorXd scale(rows);
  int r = 0;
  for (std::size_t l = 0; l < target.nodes.size(); ++l) {
    const int m = target.multiplicity[l];
    const auto cols = detail::operator_columns(p, basis, nbasis, target.nodes[l], static_cast<std::size_t>(m - 1));
    for (int j = 0; j < m; ++j, ++r) {
      const double fact = detail::factorial(static_cast<std::size_t>(j));
      double big = 0.0;
      for (int c = 0; c < rows; ++c) {
        a(r, c) = cols[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)];
        big = std::max(big, std::abs(a(r, c)));
      }
      b(r) = target.values[l][static_cast<std::size_t>(j)] / fact;
      scale(r) = big > 0.0 ? 1.0 / big : 1.0;
    }
  }
  const Eigen::MatrixXcd as = scale.asDiagonal() * a;
  const Eigen::VectorXcd bs = scale.asDiagonal() * b;
  const TsvdResult res = tsvd_solve(as, bs, opt);
  FrequencyLevinSolution s;
  s.basis = basis;
  s.c0 = res.x(0);
  s.coeffs.assign(res.x.data() + 1, res.x.data() + res.x.size());
  s.residual_norm = (a * res.x - b).cwiseAbs().maxCoeff();
  s.tsvd_truncated = res.truncated;
  s.smallest_sv = res.smallest_sv;
  return s;
}

/// Hermite data of -q1 g' for the second log-case system.
inline HermiteData log_second_target(const ProblemSpec& p, const FrequencyLevinSolution& first, const HermiteData& like) {
  HermiteData d;
  d.nodes = like.nodes;
  d.multiplicity = like.multiplicity;
  d.values.resize(d.nodes.size());
  for (std::size_t l = 0; l < d.nodes.size(); ++l) {
    const std::size_t m = static_cast<std::size_t>(d.multiplicity[l]);
    const CSeries q = frequency_q1_jet(p, first, d.nodes[l], m - 1);
    const CSeries gp = to_complex(differentiate(p.oscillator.taylor(d.nodes[l], m)));
    const CSeries prod = -(q * gp);
    d.values[l].resize(m);
    for (std::size_t j = 0; j < m; ++j) d.values[l][j] = prod.derivative(j);
  }
  return d;
}

}  // namespace oscquad
