#pragma once

/**
 * @file baselines.hpp
 * @brief Gauss–Legendre, composite moment-free Filon, the CMFP composite rule,
 *        and a brute-force reference oracle.
 */

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include "errors.hpp"
#include "gauss.hpp"
#include "problem.hpp"
#include "result.hpp"

namespace oscquad {

/// m-point Gauss–Legendre value of ∫_a^b f.
template <class F>
auto gauss_legendre(F&& f, double a, double b, int m) {
  if (m < 1) fail(ErrorKind::Parameter, "Gauss-Legendre needs m >= 1");
  if (!(a < b)) fail(ErrorKind::Parameter, "Gauss-Legendre needs a < b");
  return apply_rule(gauss_legendre_rule(m), std::forward<F>(f), a, b);
}

/// Full non-oscillatory part f(x) s(x) of a problem.
inline std::function<Complex(double)> singular_amplitude(const ProblemSpec& p) {
  return [&p](double x) {
    const Complex f = p.amplitude.value(x);
    const double xa = std::pow(x, p.alpha);
    return p.kind == SingularityKind::Algebraic ? f * xa : f * xa * std::log(x);
  };
}

// ---------------------------------------------------------------------------
// Moment-free Filon for g(x) = x
// ---------------------------------------------------------------------------

namespace detail {

/// M_k = ∫_{-1}^{1} t^k e^{iωt} dt, k = 0..m-1.
inline std::vector<Complex> exp_moments(double omega, int m) {
  std::vector<Complex> out(static_cast<std::size_t>(m));
  if (std::abs(omega) <= std::max(2.0, static_cast<double>(m))) {
    using LC = std::complex<long double>;
    for (int k = 0; k < m; ++k) {
      LC term(1.0L, 0.0L), sum(0.0L, 0.0L);
      for (int j = 0; j < 200; ++j) {
        if (j > 0) term *= LC(0.0L, static_cast<long double>(omega)) / static_cast<long double>(j);
        if ((k + j) % 2 == 0) {
          const LC piece = term * (2.0L / static_cast<long double>(k + j + 1));
          sum += piece;
          if (j > std::abs(omega) + 2 && std::abs(piece) < 1e-22L * std::max(std::abs(sum), 1e-300L)) break;
        }
      }
      out[static_cast<std::size_t>(k)] = Complex(static_cast<double>(sum.real()), static_cast<double>(sum.imag()));
    }
    return out;
  }
  const Complex iw(0.0, omega);
  const Complex ep = std::exp(iw), em = std::exp(-iw);
  out[0] = (ep - em) / iw;
  for (int k = 1; k < m; ++k) {
    const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
    out[static_cast<std::size_t>(k)] = (ep - sgn * em) / iw - (static_cast<double>(k) / iw) * out[static_cast<std::size_t>(k - 1)];
  }
  return out;
}

/// Lobatto reference points on [-1,1] and the inverse of their Vandermonde matrix.
struct MfReference {
  std::vector<double> t;
  Eigen::MatrixXd vinv;

  explicit MfReference(int m) {
    t.resize(static_cast<std::size_t>(m));
    if (m == 1) {
      t[0] = 0.0;
    } else {
      for (int j = 0; j < m; ++j) t[static_cast<std::size_t>(j)] = -std::cos(j * std::numbers::pi / (m - 1));
    }
    Eigen::MatrixXd v(m, m);
    for (int i = 0; i < m; ++i) {
      double pw = 1.0;
      for (int k = 0; k < m; ++k) {
        v(i, k) = pw;
        pw *= t[static_cast<std::size_t>(i)];
      }
    }
    vinv = v.inverse();
  }
};

/// ∫_a^b P(x) e^{iwx} dx with P interpolating f at m Lobatto points of [a,b].
template <class F>
Complex mf_panel(const MfReference& ref, F&& f, double w, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const int m = static_cast<int>(ref.t.size());
  const std::vector<Complex> mom = exp_moments(w * h, m);
  Complex acc(0.0);
  for (int j = 0; j < m; ++j) {
    Complex wt(0.0);
    for (int k = 0; k < m; ++k) wt += ref.vinv(k, j) * mom[static_cast<std::size_t>(k)];
    acc += wt * f(c + h * ref.t[static_cast<std::size_t>(j)]);
  }
  return acc * h * std::exp(Complex(0.0, w * c));
}

}  // namespace detail

/// Composite moment-free Filon on n equal panels of [a,b] for g(x) = x.
template <class F>
Complex cmf_composite(F&& f, double w, int n, int m, double a, double b) {
  if (n < 1 || m < 1) fail(ErrorKind::Parameter, "composite MF Filon needs n, m >= 1");
  if (!(a < b)) fail(ErrorKind::Parameter, "composite MF Filon needs a < b");
  const detail::MfReference ref(m);
  Complex acc(0.0);
  for (int j = 0; j < n; ++j) {
    const double lo = a + (b - a) * j / n;
    const double hi = j + 1 == n ? b : a + (b - a) * (j + 1) / n;
    acc += detail::mf_panel(ref, f, w, lo, hi);
  }
  return acc;
}

inline Complex cmf_composite(const ProblemSpec& p, int n, int m, double a, double b) {
  if (!p.oscillator.linear) fail(ErrorKind::Capability, "moment-free Filon is implemented for linear oscillators only");
  const double slope = p.oscillator.derivative(0.0, 1);
  const auto amp = singular_amplitude(p);
  // ∫ F(x) e^{iw slope x} dx
  return cmf_composite(amp, p.w * slope, n, m, a, b) * p.phase_shift;
}

// ---------------------------------------------------------------------------
// CMFP
// ---------------------------------------------------------------------------

struct CMFPParams {
  /// Geometric levels of the moment-free part.
  int n = 4;
  /// Graded Gauss–Legendre panels.
  int s = 4;
  int m1 = 4;
  int m2 = 4;
  /// Grading exponent of x_j = (j/s)^p.
  double p = 6.0;
  double mu_index = 0.0;
  int r = 0;
  double sigma_r = 1.0;

  /// The configuration with n = s = n1, m1 = m2 = 4, p = (2 m1 + 1)/(1 + μ).
  static CMFPParams defaults(int n1, double mu) {
    CMFPParams c;
    c.n = n1;
    c.s = n1;
    c.mu_index = mu;
    c.p = (2.0 * c.m1 + 1.0) / (1.0 + mu);
    return c;
  }

  double w_r(double w) const { return std::max(std::abs(w) * sigma_r, std::abs(w)); }
  double lambda_r(double w) const { return std::pow(w_r(w), -1.0 / (r + 1)); }
};

/**
 * λ Σ_{j=0}^{s-1} GL_{m1}[φ] on x_j = (j/s)^p with φ(x) = F(λx) e^{iwλx}, plus
 * composite MF Filon with one panel per geometric interval y_j = w_r^{(j-n)/n}.
 */
inline QuadratureResult cmfp(const ProblemSpec& p, const CMFPParams& c) {
  if (!p.oscillator.linear) fail(ErrorKind::Capability, "CMFP requires a linear oscillator");
  if (c.r != 0) fail(ErrorKind::Capability, "CMFP is implemented for r = 0 only");
  if (c.n < 1 || c.s < 1 || c.m1 < 1 || c.m2 < 1 || !(c.p > 0.0)) fail(ErrorKind::Parameter, "invalid CMFP parameters");
  if (!(c.mu_index > -1.0)) fail(ErrorKind::Parameter, "CMFP singularity index must exceed -1");
  const double slope = p.oscillator.derivative(0.0, 1);
  const double w = p.w * slope;
  const double wr = c.w_r(w);
  const double lam = c.lambda_r(w);
  if (!(lam < p.a)) fail(ErrorKind::Parameter, "CMFP needs |w| > 1/a");
  const auto amp = singular_amplitude(p);

  QuadratureResult out;
  out.method = Method::CMFP;
  out.n = c.n;
  long evals = 0;

  const GaussRule rule = gauss_legendre_rule(c.m1);
  Complex gl(0.0);
  for (int j = 0; j < c.s; ++j) {
    const double x0 = std::pow(static_cast<double>(j) / c.s, c.p);
    const double x1 = std::pow(static_cast<double>(j + 1) / c.s, c.p);
    gl += apply_rule(rule, [&](double x) { return amp(lam * x) * std::exp(Complex(0.0, w * lam * x)); }, x0, x1);
    evals += c.m1;
  }

  const detail::MfReference ref(c.m2);
  Complex mf(0.0);
  double lo = lam;
  for (int j = 1; j <= c.n; ++j) {
    const double hi = j == c.n ? p.a : std::pow(wr, static_cast<double>(j - c.n) / c.n) * p.a;
    mf += detail::mf_panel(ref, amp, w, lo, hi);
    evals += c.m2;
    lo = hi;
  }
  out.value = (lam * gl + mf) * p.phase_shift;
  out.diagnostics.evaluations = evals;
  return out;
}

// ---------------------------------------------------------------------------
// Reference oracle
// ---------------------------------------------------------------------------

/// Largest |w| g(a) the oracle accepts.
inline constexpr double kOracleCap = 2e4;

struct OracleConfig {
  int order = 24;
  /// Maximum phase change per panel.
  double phase_width = std::numbers::pi / 2.0;
  /// Target for the neglected part near the origin.
  double tail_tolerance = 1e-19;
};

struct OracleResult {
  Complex value;
  long evaluations = 0;
  int depth = 0;
};

/**
 * ∫_0^a f(x) x^α [log x] e^{iwg(x)} dx by dyadic panels toward 0, each split
 * so that the phase changes by at most phase_width, with order-point GL per
 * panel. The innermost [0,ε] is replaced by its leading term f(0)∫_0^ε x^α[log x].
 * w = 0 is allowed.
 */
inline OracleResult oracle_integral(const std::function<Complex(double)>& f, const std::function<double(double)>& g,
                                    double a, double alpha, SingularityKind kind, double w, const OracleConfig& cfg = {}) {
  if (!(a > 0.0) || !(alpha > -1.0)) fail(ErrorKind::Parameter, "oracle needs a > 0 and alpha > -1");
  const bool log_kind = kind == SingularityKind::AlgebraicLog;
  auto integrand = [&](double x) {
    const double xa = std::pow(x, alpha);
    const Complex v = f(x) * (log_kind ? xa * std::log(x) : xa);
    return w == 0.0 ? v : v * std::exp(Complex(0.0, w * g(x)));
  };

  OracleResult out;
  double eps = a;
  const double scale = std::max(1.0, std::abs(w)) * std::max(1.0, a);
  while (out.depth < 400) {
    const double le = std::abs(std::log(eps));
    const double next = std::pow(eps, 2.0 + alpha) * scale * (1.0 + le) * (1.0 + le);
    if (next <= cfg.tail_tolerance && eps < 0.5 * a) break;
    eps *= 0.5;
    ++out.depth;
  }

  const GaussRule rule = gauss_legendre_rule(cfg.order);
  Complex acc(0.0);
  double hi = a;
  for (int k = 0; k < out.depth; ++k) {
    const double lo = 0.5 * hi;
    const double dphase = w == 0.0 ? 0.0 : std::abs(w * (g(hi) - g(lo)));
    const int pieces = std::max(1, static_cast<int>(std::ceil(dphase / cfg.phase_width)));
    for (int i = 0; i < pieces; ++i) {
      const double pa = lo + (hi - lo) * i / pieces;
      const double pb = i + 1 == pieces ? hi : lo + (hi - lo) * (i + 1) / pieces;
      acc += apply_rule(rule, integrand, pa, pb);
    }
    out.evaluations += static_cast<long>(pieces) * cfg.order;
    hi = lo;
  }
  const double ea = std::pow(eps, 1.0 + alpha) / (1.0 + alpha);
  const double tail = log_kind ? ea * (std::log(eps) - 1.0 / (1.0 + alpha)) : ea;
  const Complex e0 = w == 0.0 ? Complex(1.0) : std::exp(Complex(0.0, w * g(0.0)));
  acc += f(0.0) * e0 * tail;
  out.value = acc;
  return out;
}

/// Oracle value of a problem; refuses |w| g(a) > kOracleCap.
inline OracleResult reference_oracle(const ProblemSpec& p, const OracleConfig& cfg = {}) {
  if (std::abs(p.w) * p.g_at_end() > kOracleCap) {
    fail(ErrorKind::Refusal, "oracle refuses |w| g(a) = " + std::to_string(std::abs(p.w) * p.g_at_end()) + " above " +
                                 std::to_string(kOracleCap));
  }
  OracleResult r = oracle_integral(p.amplitude.value, p.oscillator.value, p.a, p.alpha, p.kind, p.w, cfg);
  r.value *= p.phase_shift;
  return r;
}

}  // namespace oscquad
