#pragma once

/**
 * @file filon.hpp
 * @brief Filon-type quadrature in the basis Ψ = {g', g'g, g'g², ...}.
 *
 * With p = Σ p_k g' g^{k-1} interpolating f1 in the Hermite sense,
 *   ∫_0^a f x^α e^{iwg} dx ≈ Σ p_k μ_k,   μ_k = ∫_0^G u^{k-1+α} e^{iwu} du,
 * and the log kind adds Σ p_k ν_k with ν_k = ∫_0^G u^{k-1+α} log u e^{iwu} du.
 */

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <optional>
#include <vector>

#include "errors.hpp"
#include "hermite.hpp"
#include "numkernel.hpp"
#include "problem.hpp"
#include "series.hpp"

namespace oscquad {

struct MomentTable {
  std::vector<Complex> mu;
  std::optional<std::vector<Complex>> nu;
  double alpha = 0.0;
  double w = 0.0;
  double g_a = 1.0;
};

/// Largest Ψ-basis size accepted by hermite_solve.
inline constexpr int kMaxFilonBasis = 41;

namespace detail {

struct KummerMoment {
  Complex value;
  Complex log_value;
};

/**
 * ∫_0^G u^{b-1} e^{iwu} du = G^b e^{iwG} Σ_m (-iwG)^m / (b(b+1)...(b+m)), and
 * its b-derivative. The terms decrease from the start once b >= |w|G.
 */
inline KummerMoment kummer_moment(double b, double w, double g_a, bool with_log) {
  using LC = std::complex<long double>;
  const LC z(0.0L, -static_cast<long double>(w) * g_a);
  LC term = 1.0L / static_cast<long double>(b);
  long double harmonic = 1.0L / static_cast<long double>(b);
  LC sum = term, lsum = term * harmonic;
  for (int m = 1; m < 10000; ++m) {
    const long double bm = static_cast<long double>(b) + m;
    term *= z / bm;
    harmonic += 1.0L / bm;
    sum += term;
    if (with_log) lsum += term * harmonic;
    if (m > std::abs(z) && std::abs(term) * harmonic <= 1e-21L * std::abs(sum)) break;
  }
  const Complex pref = std::pow(g_a, b) * std::exp(Complex(0.0, w * g_a));
  KummerMoment out;
  out.value = pref * Complex(static_cast<double>(sum.real()), static_cast<double>(sum.imag()));
  if (with_log) {
    const Complex ls(static_cast<double>(lsum.real()), static_cast<double>(lsum.imag()));
    out.log_value = std::log(g_a) * out.value - pref * ls;
  }
  return out;
}

inline void check_moment_args(double alpha, double w, double g_a, int count) {
  if (w == 0.0 || !std::isfinite(w)) fail(ErrorKind::Parameter, "moments need a nonzero frequency");
  if (!(g_a > 0.0)) fail(ErrorKind::Parameter, "moments need g(a) > 0");
  if (!(alpha > -1.0)) fail(ErrorKind::Parameter, "moments need alpha > -1");
  if (count < 1) fail(ErrorKind::Parameter, "moment count must be positive");
}

}  // namespace detail

/**
 * μ_1..μ_count. μ_1 = (-iw)^{-(1+α)} γ(1+α, -iwG); then
 * μ_{j+1} = -((j+α)/(iw)) μ_j + G^{j+α} e^{iwG}/(iw) while j+α < |w|G, and the
 * Kummer series for the remaining (non-oscillatory) indices.
 */
inline std::vector<Complex> moments_mu(double alpha, double w, double g_a, int count, const KernelConfig& cfg = {}) {
  detail::check_moment_args(alpha, w, g_a, count);
  const double zabs = std::abs(w) * g_a;
  const Complex iw(0.0, w);
  const Complex e = std::exp(Complex(0.0, w * g_a));
  std::vector<Complex> mu(static_cast<std::size_t>(count));
  for (int k = 1; k <= count; ++k) {
    const double b = k + alpha;
    Complex v;
    if (b >= zabs) {
      v = detail::kummer_moment(b, w, g_a, false).value;
    } else if (k == 1) {
      const Complex z(0.0, -w * g_a);
      const Complex lower = zabs <= cfg.gamma_crossover
                                ? lower_gamma_complex(b, z, cfg).value
                                : gamma_real(b) - upper_gamma_complex(b, z, cfg).value;
      v = lower / minus_iw_pow(w, b);
    } else {
      const Complex prev = mu[static_cast<std::size_t>(k - 2)];
      const double j = k - 1;
      v = -((j + alpha) / iw) * prev + std::pow(g_a, j + alpha) * e / iw;
    }
    mu[static_cast<std::size_t>(k - 1)] = v;
  }
  return mu;
}

/**
 * ν_1..ν_count. ν_1 = log G μ_1 - G^{1+α}/(1+α)² ₂F₂(1+α,1+α;2+α,2+α;iwG),
 * cross-checked against the Kummer form whenever that is well conditioned;
 * forward recurrence
 *   ν_{j+1} = -((j+α)/(iw)) ν_j - μ_j/(iw) + G^{j+α} log G e^{iwG}/(iw)
 * while j+α < |w|G.
 */
inline std::vector<Complex> moments_nu(double alpha, double w, double g_a, const std::vector<Complex>& mu, int count,
                                       const KernelConfig& cfg = {}) {
  detail::check_moment_args(alpha, w, g_a, count);
  if (static_cast<int>(mu.size()) < count) fail(ErrorKind::Parameter, "moments_nu needs at least `count` mu values");
  const double zabs = std::abs(w) * g_a;
  const Complex iw(0.0, w);
  const Complex e = std::exp(Complex(0.0, w * g_a));
  const double lg = std::log(g_a);
  std::vector<Complex> nu(static_cast<std::size_t>(count));
  for (int k = 1; k <= count; ++k) {
    const double b = k + alpha;
    Complex v;
    if (b >= zabs) {
      v = detail::kummer_moment(b, w, g_a, true).log_value;
    } else if (k == 1) {
      const KernelValue f = hyp2f2_equal(b, Complex(0.0, w * g_a), cfg);
      v = lg * mu[0] - std::pow(g_a, b) / (b * b) * f.value;
      if (zabs <= 8.0) {
        const Complex check = detail::kummer_moment(b, w, g_a, true).log_value;
        if (std::abs(check - v) > 1e-9 * std::max(std::abs(check), 1e-300)) {
          fail(ErrorKind::FormulaMismatch, "closed form of the first log moment disagrees with its series");
        }
      }
    } else {
      const double j = k - 1;
      v = -((j + alpha) / iw) * nu[static_cast<std::size_t>(k - 2)] - mu[static_cast<std::size_t>(k - 2)] / iw +
          std::pow(g_a, j + alpha) * lg * e / iw;
    }
    nu[static_cast<std::size_t>(k - 1)] = v;
  }
  return nu;
}

inline MomentTable moment_table(double alpha, double w, double g_a, int count, bool with_nu, const KernelConfig& cfg = {}) {
  MomentTable t;
  t.alpha = alpha;
  t.w = w;
  t.g_a = g_a;
  t.mu = moments_mu(alpha, w, g_a, count, cfg);
  if (with_nu) t.nu = moments_nu(alpha, w, g_a, t.mu, count, cfg);
  return t;
}

struct FilonCoefficients {
  /// p_1..p_{M+1} in the unscaled basis g' g^{k-1}.
  std::vector<Complex> p;
  double interpolation_residual = 0.0;
};

/**
 * Hermite interpolation of the data by Σ p_k g' g^{k-1}. Columns are scaled
 * by G^{1-k}; the interpolation conditions are rechecked after the solve.
 */
inline FilonCoefficients hermite_solve(const HermiteData& data, const ProblemSpec& spec) {
  const int rows = data.conditions();
  if (rows < 1) fail(ErrorKind::Parameter, "hermite_solve needs at least one condition");
  if (rows > kMaxFilonBasis) {
    fail(ErrorKind::DegenerateSystem, "Filon basis size " + std::to_string(rows) + " exceeds the cap of " +
                                          std::to_string(kMaxFilonBasis) + "; use fewer nodes");
  }
  const double ga = spec.g_at_end();
  Eigen::MatrixXcd a(rows, rows);
  Eigen::VectorXcd b(rows);
  int r = 0;
  for (std::size_t l = 0; l < data.nodes.size(); ++l) {
    const std::size_t m = static_cast<std::size_t>(data.multiplicity[l]);
    const RSeries g = spec.oscillator.taylor(data.nodes[l], m);
    const RSeries gp = differentiate(g);
    const RSeries gs = g.truncated(m - 1) / ga;
    RSeries col = gp;
    for (int k = 0; k < rows; ++k) {
      for (std::size_t j = 0; j < m; ++j) a(r + static_cast<int>(j), k) = col[j];
      col = col * gs;
    }
    for (std::size_t j = 0; j < m; ++j) b(r + static_cast<int>(j)) = data.values[l][j] / detail::factorial(j);
    r += static_cast<int>(m);
  }
  Eigen::VectorXd rs(rows);
  for (int i = 0; i < rows; ++i) {
    const double big = a.row(i).cwiseAbs().maxCoeff();
    rs(i) = big > 0.0 ? 1.0 / big : 1.0;
  }
  const Eigen::MatrixXcd as = rs.asDiagonal() * a;
  const Eigen::VectorXcd bs = rs.asDiagonal() * b;
  const Eigen::VectorXcd c = as.fullPivLu().solve(bs);

  FilonCoefficients out;
  const double bnorm = std::max(1.0, bs.cwiseAbs().maxCoeff());
  out.interpolation_residual = (as * c - bs).cwiseAbs().maxCoeff() / bnorm;
  if (!(out.interpolation_residual <= 1e-9)) {
    fail(ErrorKind::DegenerateSystem, "generalized Vandermonde system is too ill-conditioned (residual " +
                                          std::to_string(out.interpolation_residual) + "); use fewer nodes");
  }
  out.p.resize(static_cast<std::size_t>(rows));
  double scale = 1.0;
  for (int k = 0; k < rows; ++k) {
    out.p[static_cast<std::size_t>(k)] = c(k) * scale;
    scale /= ga;
  }
  return out;
}

}  // namespace oscquad
