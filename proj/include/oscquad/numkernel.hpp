#pragma once

/**
 * @file numkernel.hpp
 * @brief Special-function kernels behind the closed-form parts of the
 *        singularity-separated Levin solution.
 *
 * All complex powers use the principal branch. The frequency factor is
 *   (-iw)^p = exp(p (log|w| - i π/2 sign w)).
 */

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "errors.hpp"
#include "gauss.hpp"

namespace oscquad {

using Complex = std::complex<double>;

enum class KernelStrategy { Series, ContinuedFraction, RotatedPathQuadrature };

inline const char* to_string(KernelStrategy s) {
  switch (s) {
    case KernelStrategy::Series: return "series";
    case KernelStrategy::ContinuedFraction: return "continued-fraction";
    case KernelStrategy::RotatedPathQuadrature: return "rotated-path";
  }
  return "?";
}

struct KernelDiag {
  KernelStrategy strategy = KernelStrategy::Series;
  int terms_used = 1;
  double est_error = 0.0;
};

struct KernelValue {
  Complex value;
  KernelDiag diag;
};

/// Strategy crossovers. Both default to |z| = 8; see the consistency tests.
struct KernelConfig {
  double gamma_crossover = 8.0;
  double hyp_crossover = 8.0;
  int max_terms = 4000;
  /// Relative accuracy below which a kernel evaluation is rejected.
  double tolerance = 1e-9;
};

namespace detail {

using LComplex = std::complex<long double>;

inline bool is_nonpositive_integer(double a) { return a <= 0.0 && a == std::floor(a); }

}  // namespace detail

/// Γ(a) for real a away from the poles.
inline double gamma_real(double a) {
  if (detail::is_nonpositive_integer(a)) fail(ErrorKind::Domain, "gamma function pole at a = " + std::to_string(a));
  return std::tgamma(a);
}

/// ψ(x) for real x away from the poles.
inline double digamma(double x) {
  if (detail::is_nonpositive_integer(x)) fail(ErrorKind::Domain, "digamma pole");
  long double acc = 0.0L;
  long double y = x;
  while (y < 12.0L) {
    acc -= 1.0L / y;
    y += 1.0L;
  }
  const long double inv = 1.0L / y, inv2 = inv * inv;
  // Bernoulli tail: B2/2, B4/4, ..., B12/12
  const long double tail =
      inv2 * (1.0L / 12 - inv2 * (1.0L / 120 - inv2 * (1.0L / 252 - inv2 * (1.0L / 240 - inv2 * (1.0L / 132 - inv2 * 691.0L / 32760)))));
  acc += std::log(y) - 0.5L * inv - tail;
  return static_cast<double>(acc);
}

/// (-iw)^p on the principal branch.
inline Complex minus_iw_pow(double w, double p) {
  const double sgn = w > 0.0 ? 1.0 : -1.0;
  return std::exp(Complex(p * std::log(std::abs(w)), -p * sgn * std::numbers::pi / 2.0));
}

namespace detail {

/// Σ_{k>=k0} (-z)^k / (k! (a+k)). Returns the sum and fills diag.
inline LComplex lower_gamma_sum(double a, Complex z, int k0, const KernelConfig& cfg, KernelDiag& diag) {
  const LComplex mz(-static_cast<long double>(z.real()), -static_cast<long double>(z.imag()));
  LComplex term(1.0L, 0.0L);  // (-z)^k / k!
  LComplex sum(0.0L, 0.0L);
  long double biggest = 0.0L;
  int k = 0;
  for (; k < cfg.max_terms; ++k) {
    if (k > 0) term *= mz / static_cast<long double>(k);
    if (k < k0) continue;
    const LComplex piece = term / static_cast<long double>(a + k);
    sum += piece;
    biggest = std::max(biggest, std::abs(piece));
    if (k > std::abs(z) + 2 && std::abs(piece) <= std::numeric_limits<long double>::epsilon() * std::abs(sum)) break;
  }
  diag.strategy = KernelStrategy::Series;
  diag.terms_used = k + 1;
  diag.est_error = static_cast<double>(biggest * (k + 1) * std::numeric_limits<long double>::epsilon());
  return sum;
}

/// Modified Lentz evaluation of Γ(a,z) e^{z} z^{-a}.
inline LComplex upper_gamma_cf(double a, Complex z, const KernelConfig& cfg, KernelDiag& diag) {
  const LComplex x(z.real(), z.imag());
  const long double tiny = 1e-300L;
  const long double eps = std::numeric_limits<long double>::epsilon();
  LComplex b = x + static_cast<long double>(1.0 - a);
  LComplex c = 1.0L / tiny;
  LComplex d = 1.0L / b;
  LComplex h = d;
  long double last = 1.0L;
  int i = 1;
  for (; i < cfg.max_terms; ++i) {
    const long double an = -static_cast<long double>(i) * (static_cast<long double>(i) - a);
    b += 2.0L;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0L / d;
    const LComplex del = d * c;
    h *= del;
    last = std::abs(del - 1.0L);
    if (last < eps) break;
  }
  diag.strategy = KernelStrategy::ContinuedFraction;
  diag.terms_used = i;
  diag.est_error = static_cast<double>(std::max(last, eps) * 4);
  return h;
}

inline void check_accuracy(const KernelValue& v, const KernelConfig& cfg, const char* what) {
  const double scale = std::max(std::abs(v.value), std::numeric_limits<double>::min());
  if (!std::isfinite(v.value.real()) || !std::isfinite(v.value.imag()) || v.diag.est_error > cfg.tolerance * scale) {
    throw AccuracyError(std::string(what) + " did not reach the requested accuracy", v.diag.est_error);
  }
}

}  // namespace detail

/// Lower incomplete gamma γ(a,z) = z^a Σ (-z)^k/(k!(a+k)), analytically continued in a.
inline KernelValue lower_gamma_complex(double a, Complex z, const KernelConfig& cfg = {}) {
  if (detail::is_nonpositive_integer(a)) fail(ErrorKind::Domain, "lower incomplete gamma pole in a");
  KernelValue out;
  const detail::LComplex s = detail::lower_gamma_sum(a, z, 0, cfg, out.diag);
  const Complex za = std::pow(z, a);
  out.value = za * Complex(static_cast<double>(s.real()), static_cast<double>(s.imag()));
  out.diag.est_error *= std::abs(za);
  return out;
}

/**
 * Upper incomplete gamma Γ(a,z) for real a in (-1,2) and |arg z| < π.
 * Power series of γ(a,z) for |z| <= crossover, continued fraction beyond.
 */
inline KernelValue upper_gamma_complex(double a, Complex z, const KernelConfig& cfg = {}) {
  if (!(a > -1.0 && a < 2.0)) fail(ErrorKind::Parameter, "upper_gamma_complex supports a in (-1,2)");
  if (z == Complex(0.0) && a <= 0.0) fail(ErrorKind::Domain, "Gamma(a,0) diverges for a <= 0");
  if (z.imag() == 0.0 && z.real() < 0.0) fail(ErrorKind::Domain, "z on the branch cut");
  KernelValue out;
  if (std::abs(z) <= cfg.gamma_crossover) {
    if (z == Complex(0.0)) {
      out.value = gamma_real(a);
      return out;
    }
    const KernelValue low = lower_gamma_complex(a, z, cfg);
    out.value = gamma_real(a) - low.value;
    out.diag = low.diag;
    out.diag.est_error += std::abs(out.value) * 1e-16;
  } else {
    const detail::LComplex h = detail::upper_gamma_cf(a, z, cfg, out.diag);
    const Complex pref = std::exp(-z) * std::pow(z, a);
    out.value = pref * Complex(static_cast<double>(h.real()), static_cast<double>(h.imag()));
    out.diag.est_error *= std::abs(out.value);
  }
  detail::check_accuracy(out, cfg, "upper incomplete gamma");
  return out;
}

namespace detail {

/// Σ_{k>=1} (β/(β+k))² z^k / k!  (i.e. ₂F₂ - 1) by the Maclaurin series.
inline KernelValue hyp2f2_minus_one_series(double beta, Complex z, const KernelConfig& cfg) {
  const LComplex zz(z.real(), z.imag());
  const long double b = beta;
  LComplex term(1.0L, 0.0L);
  LComplex sum(0.0L, 0.0L);
  long double biggest = 0.0L;
  int k = 1;
  for (; k < cfg.max_terms; ++k) {
    term *= zz / static_cast<long double>(k);
    const long double r = b / (b + k);
    const LComplex piece = term * (r * r);
    sum += piece;
    biggest = std::max(biggest, std::abs(piece));
    if (k > std::abs(z) + 2 && std::abs(piece) <= std::numeric_limits<long double>::epsilon() * std::abs(sum)) break;
  }
  KernelValue out;
  out.value = Complex(static_cast<double>(sum.real()), static_cast<double>(sum.imag()));
  out.diag.strategy = KernelStrategy::Series;
  out.diag.terms_used = k;
  out.diag.est_error = static_cast<double>(biggest * k * std::numeric_limits<long double>::epsilon()) + 1e-17;
  return out;
}

/**
 * ₂F₂(β,β;1+β,1+β;z) = β² ∫_0^1 u^{β-1}(-log u) e^{zu} du for Re z <= 0, with
 * [0,1] deformed onto the two rays u = τ e^{iφ}/|z| and u = 1 + τ e^{iφ}/|z|,
 * φ = arg(-1/z), along which e^{zu} decays like e^{-τ}. The ray from 0 has a
 * closed form in Γ and ψ; this continues analytically to β in (-1,0).
 */
inline KernelValue hyp2f2_rotated(double beta, Complex z) {
  const double r = std::abs(z);
  double phi = std::numbers::pi - std::arg(z);
  if (phi > std::numbers::pi) phi -= 2.0 * std::numbers::pi;
  const Complex dir = std::polar(1.0, phi);

  const Complex head = std::polar(std::pow(r, -beta), phi * beta) * gamma_real(beta) *
                       Complex(-digamma(beta) + std::log(r), -phi);

  const Complex u = dir / r;
  auto integrand = [&](double tau) {
    const Complex v = 1.0 + tau * u;
    return std::pow(v, beta - 1.0) * (-std::log(v)) * std::exp(-tau);
  };
  static constexpr double breaks[] = {0.0, 1.0, 2.0, 4.0, 8.0, 16.0, 24.0, 32.0, 40.0, 52.0};
  auto ray = [&](int m) {
    const GaussRule rule = gauss_legendre_rule(m);
    Complex acc(0.0);
    for (std::size_t i = 0; i + 1 < std::size(breaks); ++i) acc += apply_rule(rule, integrand, breaks[i], breaks[i + 1]);
    return acc;
  };
  const Complex fine = ray(24);
  const Complex coarse = ray(18);
  const Complex tailpref = std::exp(z) * u;

  KernelValue out;
  out.value = beta * beta * (head - tailpref * fine);
  out.diag.strategy = KernelStrategy::RotatedPathQuadrature;
  out.diag.terms_used = 24 * static_cast<int>(std::size(breaks) - 1);
  out.diag.est_error = beta * beta * std::abs(tailpref) * std::abs(fine - coarse) + 4e-16 * std::abs(out.value);
  return out;
}

}  // namespace detail

/**
 * ₂F₂(β,β;1+β,1+β;z) = Σ_k (β/(β+k))² z^k/k!, β in (-1,2) \ {0}.
 * Series for |z| <= crossover (or Re z > 0), rotated-path quadrature otherwise.
 */
inline KernelValue hyp2f2_equal(double beta, Complex z, const KernelConfig& cfg = {}) {
  if (beta == 0.0 || detail::is_nonpositive_integer(beta)) fail(ErrorKind::Domain, "2F2 parameter is a pole");
  KernelValue out;
  if (std::abs(z) <= cfg.hyp_crossover || z.real() > 0.0) {
    out = detail::hyp2f2_minus_one_series(beta, z, cfg);
    out.value += 1.0;
  } else {
    out = detail::hyp2f2_rotated(beta, z);
  }
  detail::check_accuracy(out, cfg, "2F2");
  return out;
}

/// ₂F₂ - 1, without the cancellation near z = 0.
inline KernelValue hyp2f2_equal_minus_one(double beta, Complex z, const KernelConfig& cfg = {}) {
  if (std::abs(z) <= cfg.hyp_crossover || z.real() > 0.0) {
    KernelValue out = detail::hyp2f2_minus_one_series(beta, z, cfg);
    detail::check_accuracy(out, cfg, "2F2");
    return out;
  }
  KernelValue out = hyp2f2_equal(beta, z, cfg);
  out.value -= 1.0;
  return out;
}

/**
 * B(G) = α ∫_0^G (1 - e^{iwt}) t^{α-1} dt
 *      = G^α + α [Γ(α,-iwG) - Γ(α)] / (-iw)^α.
 * For small |wG| the equivalent series -α G^α Σ_{k>=1} (iwG)^k/(k!(α+k)) is
 * summed directly, which avoids the cancellation in Γ(α,z) - Γ(α).
 */
inline Complex h_bracket(double alpha, double w, double gx, const KernelConfig& cfg = {}) {
  if (!(gx > 0.0)) fail(ErrorKind::Domain, "h kernel needs g(x) > 0");
  const Complex z(0.0, -w * gx);
  const double ga = std::pow(gx, alpha);
  if (std::abs(z) <= cfg.gamma_crossover) {
    KernelDiag diag;
    const detail::LComplex s = detail::lower_gamma_sum(alpha, z, 1, cfg, diag);
    return -alpha * ga * Complex(static_cast<double>(s.real()), static_cast<double>(s.imag()));
  }
  const KernelValue up = upper_gamma_complex(alpha, z, cfg);
  return ga + alpha * (up.value - gamma_real(alpha)) / minus_iw_pow(w, alpha);
}

/// Solution of h' + iw g' h = -α c0 g' (1 - e^{-iwg}) g^{α-1}, h(0) = 0, at g(x) = gx.
inline Complex kernel_h_alg(Complex c0, double alpha, double w, double gx, const KernelConfig& cfg = {}) {
  if (!(gx > 0.0)) fail(ErrorKind::Domain, "h kernel needs g(x) > 0");
  if (c0 == Complex(0.0)) return 0.0;
  return c0 * std::exp(Complex(0.0, -w * gx)) * h_bracket(alpha, w, gx, cfg);
}

/**
 * Log-case h: the solution with h(0)=0 of
 *   h' + iwg'h = -(α c0 log g + α c1 + c0) g' (1 - e^{-iwg}) g^{α-1},
 * which is
 *   e^{-iwG} [ (c0 log G + c1 + c0/α) B(G) + (c0/α) G^α (₂F₂(α,α;1+α,1+α;iwG) - 1) ].
 */
inline Complex kernel_h_log(Complex c0, Complex c1, double alpha, double w, double gx, const KernelConfig& cfg = {}) {
  if (!(gx > 0.0)) fail(ErrorKind::Domain, "h kernel needs g(x) > 0");
  if (c0 == Complex(0.0) && c1 == Complex(0.0)) return 0.0;
  const Complex phase = std::exp(Complex(0.0, -w * gx));
  const Complex bracket = h_bracket(alpha, w, gx, cfg);
  Complex out = (c0 * std::log(gx) + c1 + c0 / alpha) * bracket;
  if (c0 != Complex(0.0)) {
    const KernelValue f = hyp2f2_equal_minus_one(alpha, Complex(0.0, w * gx), cfg);
    out += (c0 / alpha) * std::pow(gx, alpha) * f.value;
  }
  return phase * out;
}

}  // namespace oscquad
