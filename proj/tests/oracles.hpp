#pragma once

// Test-only reference values, independent of the library's numerics.

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/float128.hpp>

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

namespace oracles {

using quad = boost::multiprecision::float128;
using Complex = std::complex<double>;

template <class Real>
struct Cx {
  Real re{0}, im{0};
  Cx() = default;
  Cx(Real r, Real i = Real(0)) : re(r), im(i) {}
  Cx& operator+=(const Cx& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  friend Cx operator+(Cx a, const Cx& b) { return a += b; }
  friend Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
  friend Cx operator*(const Cx& a, const Cx& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
  friend Cx operator*(const Real& s, const Cx& a) { return {s * a.re, s * a.im}; }
  Complex to_double() const { return {static_cast<double>(re), static_cast<double>(im)}; }
};

template <class Real>
Cx<Real> expi(const Real& t) {
  using std::cos;
  using std::sin;
  return {cos(t), sin(t)};
}

/// Gauss–Legendre nodes and weights on [-1,1] by Newton iteration in Real.
template <class Real>
void gl_rule(int m, std::vector<Real>& x, std::vector<Real>& w) {
  using std::abs;
  using std::cos;
  x.assign(m, Real(0));
  w.assign(m, Real(0));
  const Real pi = boost::math::constants::pi<Real>();
  for (int i = 0; i < (m + 1) / 2; ++i) {
    Real z = cos(pi * (Real(i) + Real(0.75)) / (Real(m) + Real(0.5)));
    Real dp = 0;
    for (int it = 0; it < 100; ++it) {
      Real p0 = 1, p1 = z;
      for (int k = 2; k <= m; ++k) {
        const Real p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (m == 1) p0 = 1;
      dp = m * (z * p1 - p0) / (z * z - 1);
      const Real dz = p1 / dp;
      z -= dz;
      if (abs(dz) < std::numeric_limits<Real>::epsilon() * 4) break;
    }
    Real p0 = 1, p1 = z;
    for (int k = 2; k <= m; ++k) {
      const Real p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = m * (z * p1 - p0) / (z * z - 1);
    x[i] = -z;
    x[m - 1 - i] = z;
    w[i] = w[m - 1 - i] = 2 / ((1 - z * z) * dp * dp);
  }
}

/// Problem data generic over the working precision.
template <class Real>
struct HpProblem {
  std::function<Cx<Real>(const Real&)> f;
  std::function<Real(const Real&)> g;
  Real a = 1;
  Real alpha = 0.5;
  bool log_kind = false;
  Real w = 1;
};

/**
 * ∫_0^a f x^α [log x] e^{iwg} by dyadic panels toward 0, phase-limited
 * subdivision and GL-30 per panel, all in Real; the innermost [0,ε] uses
 * f(0)∫_0^ε x^α[log x] e^{iwg(0)}.
 */
template <class Real>
Cx<Real> hp_integral(const HpProblem<Real>& p, const Real& tail_tol) {
  using std::abs;
  using std::ceil;
  using std::log;
  using std::pow;
  std::vector<Real> gx, gw;
  gl_rule<Real>(30, gx, gw);
  auto integrand = [&](const Real& x) {
    const Real xa = pow(x, p.alpha);
    const Real s = p.log_kind ? xa * log(x) : xa;
    return s * (p.f(x) * expi<Real>(p.w * p.g(x)));
  };
  Real eps = p.a;
  int depth = 0;
  const Real scale = (abs(p.w) > 1 ? abs(p.w) : Real(1));
  for (; depth < 2000; ++depth) {
    const Real le = abs(log(eps));
    if (eps < p.a / 2 && pow(eps, 2 + p.alpha) * scale * (1 + le) * (1 + le) * 10 < tail_tol) break;
    eps /= 2;
  }
  Cx<Real> acc;
  Real hi = p.a;
  const Real width = boost::math::constants::pi<Real>() / 3;
  for (int k = 0; k < depth; ++k) {
    const Real lo = hi / 2;
    const Real dphase = abs(p.w * (p.g(hi) - p.g(lo)));
    const long pieces = std::max<long>(1, static_cast<long>(ceil(dphase / width)));
    for (long i = 0; i < pieces; ++i) {
      const Real pa = lo + (hi - lo) * Real(i) / Real(pieces);
      const Real pb = i + 1 == pieces ? hi : lo + (hi - lo) * Real(i + 1) / Real(pieces);
      const Real c = (pa + pb) / 2, h = (pb - pa) / 2;
      Cx<Real> part;
      for (std::size_t j = 0; j < gx.size(); ++j) part += gw[j] * integrand(c + h * gx[j]);
      acc += h * part;
    }
    hi = lo;
  }
  const Real ea = pow(eps, 1 + p.alpha) / (1 + p.alpha);
  const Real tail = p.log_kind ? ea * (log(eps) - 1 / (1 + p.alpha)) : ea;
  acc += tail * (p.f(Real(0)) * expi<Real>(p.w * p.g(Real(0))));
  return acc;
}

/**
 * The built-in integrals with their original (unshifted) oscillators:
 *  ex51/ex54  ∫_0^1 e^{iw}(1-x)(2-x)^α x^α e^{-iwx}
 *  ex52       ∫_0^1 x^α log x e^{iwx}/(1+x²)
 *  ex53a/b    ∫_0^1 x^α [log x] e^{iw(x²+x+1)}/(1+x²)
 */
template <class Real>
HpProblem<Real> hp_builtin(const std::string& id, double alpha, double w) {
  HpProblem<Real> p;
  p.alpha = Real(alpha);
  const Real al(alpha);
  auto rational = [](const Real& x) { return Cx<Real>(1 / (1 + x * x)); };
  if (id == "ex51" || id == "ex54") {
    const Cx<Real> ph = expi<Real>(Real(w));
    p.f = [ph, al](const Real& x) {
      using std::pow;
      return ((1 - x) * pow(2 - x, al)) * ph;
    };
    p.g = [](const Real& x) { return x; };
    p.w = Real(-w);
  } else if (id == "ex52") {
    p.f = rational;
    p.g = [](const Real& x) { return x; };
    p.w = Real(w);
    p.log_kind = true;
  } else {
    p.f = rational;
    p.g = [](const Real& x) { return x * x + x + 1; };
    p.w = Real(w);
    p.log_kind = id == "ex53b";
  }
  return p;
}

/// Quad-precision reference value of a built-in problem.
inline Complex builtin_reference(const std::string& id, double alpha, double w) {
  const auto p = hp_builtin<quad>(id, alpha, w);
  return hp_integral<quad>(p, quad(1e-32)).to_double();
}

/// ∫_a^b f for smooth complex f on a finite interval, adaptive Gauss–Kronrod.
inline Complex gk_integral(const std::function<Complex(double)>& f, double a, double b) {
  using boost::math::quadrature::gauss_kronrod;
  const double re = gauss_kronrod<double, 61>::integrate([&](double x) { return f(x).real(); }, a, b, 20, 1e-15);
  const double im = gauss_kronrod<double, 61>::integrate([&](double x) { return f(x).imag(); }, a, b, 20, 1e-15);
  return {re, im};
}

/// ∫_a^b f for complex f with integrable endpoint singularities, tanh-sinh.
inline Complex singular_integral(const std::function<Complex(double)>& f, double a, double b) {
  boost::math::quadrature::tanh_sinh<double> ts;
  const double re = ts.integrate([&](double x) { return f(x).real(); }, a, b, 1e-15);
  const double im = ts.integrate([&](double x) { return f(x).imag(); }, a, b, 1e-15);
  return {re, im};
}

/// ∫_a^b f for f = (singular at a) · e^{iwx}: tanh-sinh on the first panel,
/// 30-point Gauss on the others, each panel spanning at most one radian of phase.
inline Complex oscillatory_singular_integral(const std::function<Complex(double)>& f, double a, double b, double w) {
  const int panels = std::max(1, static_cast<int>(std::ceil(std::abs(w) * (b - a))));
  const double h = (b - a) / panels;
  Complex acc = singular_integral(f, a, a + h);
  using boost::math::quadrature::gauss;
  for (int i = 1; i < panels; ++i) {
    const double lo = a + i * h, hi = lo + h;
    acc += Complex(gauss<double, 30>::integrate([&](double x) { return f(x).real(); }, lo, hi),
                   gauss<double, 30>::integrate([&](double x) { return f(x).imag(); }, lo, hi));
  }
  return acc;
}

/// ∫_0^∞ f for complex f decaying exponentially, exp-sinh.
inline Complex half_line_integral(const std::function<Complex(double)>& f) {
  boost::math::quadrature::exp_sinh<double> es;
  const double re = es.integrate([&](double x) { return f(x).real(); }, 1e-15);
  const double im = es.integrate([&](double x) { return f(x).imag(); }, 1e-15);
  return {re, im};
}

using wide = boost::multiprecision::cpp_bin_float_100;

/// ₂F₂(β,β;1+β,1+β;z) by its Maclaurin series in 100-digit arithmetic.
inline Complex hyp2f2_series(double beta, Complex z, int terms) {
  const wide b(beta), zr(z.real()), zi(z.imag());
  wide tr(1), ti(0), sr(1), si(0);
  for (int k = 1; k <= terms; ++k) {
    const wide nr = (tr * zr - ti * zi) / k;
    const wide ni = (tr * zi + ti * zr) / k;
    tr = nr;
    ti = ni;
    const wide r = b / (b + k);
    sr += tr * r * r;
    si += ti * r * r;
  }
  return {static_cast<double>(sr), static_cast<double>(si)};
}

}  // namespace oracles
