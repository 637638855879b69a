#pragma once

/**
 * @file problem.hpp
 * @brief Integral instances  I = ∫_0^a f(x) s(x) e^{i w g(x)} dx  with
 *        s(x) = x^α (Algebraic) or s(x) = x^α log x (AlgebraicLog).
 *
 * The singular weight is split off as g^α, leaving the smooth amplitudes
 *   f1(x) = f(x) (x/g(x))^α          f1(0) = f(0) / g'(0)^α
 *   f2(x) = f(x) log(x/g(x))         f2(0) = f(0) log(1/g'(0))
 * so that f x^α = f1 g^α and f x^α log x = f1 g^α log g + f2 x^α.
 *
 * Derivatives are carried as Taylor jets (see series.hpp). Built-in problems
 * are written once as generic expressions and evaluated both on doubles and
 * on jets, which gives exact derivative stacks of any order.
 */

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "series.hpp"

namespace oscquad {

using Complex = std::complex<double>;

inline constexpr std::size_t kUnlimitedOrder = std::numeric_limits<std::size_t>::max();

namespace detail {

inline double binomial(std::size_t n, std::size_t k) {
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

/// Central finite-difference derivative of order j with step eps^{1/(j+2)}.
template <class Fn>
auto central_difference(const Fn& fn, double x, std::size_t j) {
  using R = decltype(fn(x));
  if (j == 0) return fn(x);
  const double eps = std::numeric_limits<double>::epsilon();
  const double h = std::pow(eps, 1.0 / static_cast<double>(j + 2)) * std::max(1.0, std::abs(x));
  R acc{};
  for (std::size_t i = 0; i <= j; ++i) {
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    const double offset = (0.5 * static_cast<double>(j) - static_cast<double>(i)) * h;
    acc += sign * binomial(j, i) * fn(x + offset);
  }
  return acc / std::pow(h, static_cast<double>(j));
}

inline double factorial(std::size_t k) {
  double r = 1.0;
  for (std::size_t j = 2; j <= k; ++j) r *= static_cast<double>(j);
  return r;
}

}  // namespace detail

/// Smooth complex amplitude f with an optional derivative stack.
struct Amplitude {
  std::function<Complex(double)> value;
  /// Taylor coefficients about x up to the requested order.
  std::function<CSeries(double, std::size_t)> jet;
  /// Highest derivative order the jet can deliver.
  std::size_t max_order = 0;
  bool finite_difference = false;

  /// Build from an expression generic over double and CSeries.
  template <class F>
  static Amplitude from_generic(F f) {
    Amplitude a;
    a.value = [f](double x) { return Complex(f(x)); };
    a.jet = [f](double x, std::size_t order) { return CSeries(f(CSeries::variable(Complex(x), order))); };
    a.max_order = kUnlimitedOrder;
    return a;
  }

  /// Value-only amplitude. With finite_difference, derivatives up to order 6
  /// are approximated by central differences (a few digits are lost per order).
  static Amplitude from_values(std::function<Complex(double)> fn, bool finite_difference = false) {
    Amplitude a;
    a.value = fn;
    a.finite_difference = finite_difference;
    a.max_order = finite_difference ? 6 : 0;
    a.jet = [fn, finite_difference](double x, std::size_t order) {
      CSeries s(order);
      for (std::size_t j = 0; j <= order; ++j) {
        const Complex d = finite_difference ? detail::central_difference(fn, x, j) : fn(x);
        s[j] = d / detail::factorial(j);
      }
      return s;
    };
    return a;
  }

  /// Polynomial Σ c_k x^k.
  static Amplitude polynomial(std::vector<Complex> coeffs) {
    return from_generic([coeffs](auto x) {
      auto acc = Complex(0) * x;
      for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
      return acc;
    });
  }

  CSeries taylor(double x, std::size_t order) const {
    if (order > max_order) {
      fail(ErrorKind::Capability,
           "amplitude derivative of order " + std::to_string(max_order + 1) + " is not available");
    }
    return jet(x, order);
  }

  Complex derivative(double x, std::size_t j) const { return taylor(x, j).derivative(j); }
};

/// Real oscillator g with derivative stack.
struct Oscillator {
  std::function<double(double)> value;
  std::function<RSeries(double, std::size_t)> jet;
  std::size_t max_order = kUnlimitedOrder;
  bool linear = false;

  template <class F>
  static Oscillator from_generic(F f, bool linear = false) {
    Oscillator g;
    g.value = [f](double x) { return static_cast<double>(f(x)); };
    g.jet = [f](double x, std::size_t order) { return RSeries(f(RSeries::variable(x, order))); };
    g.linear = linear;
    return g;
  }

  static Oscillator from_values(std::function<double(double)> fn) {
    Oscillator g;
    g.value = fn;
    g.max_order = 6;
    g.jet = [fn](double x, std::size_t order) {
      RSeries s(order);
      for (std::size_t j = 0; j <= order; ++j) s[j] = detail::central_difference(fn, x, j) / detail::factorial(j);
      return s;
    };
    return g;
  }

  static Oscillator polynomial(std::vector<double> coeffs) {
    const bool lin = coeffs.size() <= 2;
    return from_generic(
        [coeffs](auto x) {
          using X = decltype(x);
          X acc = x * 0.0;
          for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
          return acc;
        },
        lin);
  }

  static Oscillator identity() {
    return from_generic([](auto x) { return x; }, true);
  }

  RSeries taylor(double x, std::size_t order) const {
    if (order > max_order) {
      fail(ErrorKind::Capability,
           "oscillator derivative of order " + std::to_string(max_order + 1) + " is not available");
    }
    return jet(x, order);
  }

  double derivative(double x, std::size_t j) const { return taylor(x, j).derivative(j); }
};

enum class SingularityKind { Algebraic, AlgebraicLog };

inline const char* to_string(SingularityKind k) {
  return k == SingularityKind::Algebraic ? "alg" : "log";
}

/// A validated integral instance. The oscillator stored here satisfies g(0)=0
/// and g'>0 on [0,a]; `phase_shift` restores any constant phase removed.
struct ProblemSpec {
  std::string id;
  Amplitude amplitude;
  Oscillator oscillator;
  double a = 1.0;
  double alpha = 0.5;
  SingularityKind kind = SingularityKind::Algebraic;
  double w = 1.0;
  Complex phase_shift{1.0, 0.0};

  double g_at_end() const { return oscillator.value(a); }
};

/// Samples used by the monotonicity check (heuristic, not a proof).
inline constexpr int kMonotonicitySamples = 256;

inline void validate_parameters(double a, double alpha, double w) {
  if (!(a > 0.0) || !std::isfinite(a)) fail(ErrorKind::Parameter, "interval end a must be positive");
  if (!(std::abs(alpha) > 0.0 && std::abs(alpha) < 1.0)) {
    fail(ErrorKind::Parameter, "exponent alpha must satisfy 0 < |alpha| < 1");
  }
  if (w == 0.0 || !std::isfinite(w)) fail(ErrorKind::Parameter, "frequency w must be nonzero and finite");
}

/**
 * Build a problem from a raw oscillator. A nonzero g(0) is shifted out into
 * phase_shift = e^{i w g(0)}, and a decreasing g is replaced by -g with w -> -w.
 */
inline ProblemSpec make_problem(std::string id, Amplitude f, const Oscillator& raw_g, double a, double alpha,
                                SingularityKind kind, double w) {
  validate_parameters(a, alpha, w);
  if (!f.value) fail(ErrorKind::Parameter, "amplitude has no value callable");
  if (!raw_g.value || !raw_g.jet) fail(ErrorKind::InvalidOscillator, "oscillator needs value and derivatives");

  const double g0 = raw_g.value(0.0);
  const double slope0 = raw_g.derivative(0.0, 1);
  if (!(std::abs(slope0) > 0.0) || !std::isfinite(slope0)) {
    fail(ErrorKind::InvalidOscillator, "g'(0) must be nonzero");
  }
  const double sign = slope0 > 0.0 ? 1.0 : -1.0;

  for (int i = 0; i <= kMonotonicitySamples + 1; ++i) {
    const double x = a * static_cast<double>(i) / static_cast<double>(kMonotonicitySamples + 1);
    const double d = sign * raw_g.derivative(x, 1);
    if (!(d > 0.0)) {
      fail(ErrorKind::InvalidOscillator, "g' changes sign or vanishes on [0,a] (x = " + std::to_string(x) + ")");
    }
  }

  ProblemSpec p;
  p.id = std::move(id);
  p.amplitude = std::move(f);
  p.a = a;
  p.alpha = alpha;
  p.kind = kind;
  p.w = sign * w;
  p.phase_shift = std::exp(Complex(0.0, w * g0));

  if (g0 == 0.0 && sign > 0.0) {
    p.oscillator = raw_g;
  } else {
    Oscillator g = raw_g;
    auto rv = raw_g.value;
    auto rj = raw_g.jet;
    g.value = [rv, g0, sign](double x) { return sign * (rv(x) - g0); };
    g.jet = [rj, g0, sign](double x, std::size_t order) {
      RSeries s = rj(x, order);
      s[0] -= g0;
      return s * sign;
    };
    p.oscillator = std::move(g);
  }
  return p;
}

/// 1 + |ln w| for α <= 0, else 1.
inline double delta_alpha(double alpha, double w) {
  return alpha <= 0.0 ? 1.0 + std::abs(std::log(w)) : 1.0;
}

/// Order of the error decay in w: s + 1 + min(1+α, 1).
inline double asymptotic_order(double alpha, int s) {
  return static_cast<double>(s) + 1.0 + std::min(1.0 + alpha, 1.0);
}

// ---------------------------------------------------------------------------
// Regularized amplitudes
// ---------------------------------------------------------------------------

namespace detail {

/// Real jet of x/g(x) about x0 (order `order`), removable at x0 = 0.
inline RSeries ratio_jet(const Oscillator& g, double x0, std::size_t order) {
  if (x0 == 0.0) {
    const RSeries gs = g.taylor(0.0, order + 1);
    const RSeries shifted = divide_by_t(gs);  // g(t)/t
    if (!(shifted[0] > 0.0)) fail(ErrorKind::InvalidOscillator, "g'(0) must be positive");
    return 1.0 / shifted;
  }
  return RSeries::variable(x0, order) / g.taylor(x0, order);
}

}  // namespace detail

/// Taylor coefficients of f1 = f (x/g)^α about x.
inline CSeries f1_taylor(const ProblemSpec& p, double x, std::size_t order) {
  const RSeries ratio = detail::ratio_jet(p.oscillator, x, order);
  return p.amplitude.taylor(x, order) * to_complex(pow(ratio, p.alpha));
}

/// Taylor coefficients of f2 = f log(x/g) about x.
inline CSeries f2_taylor(const ProblemSpec& p, double x, std::size_t order) {
  const RSeries ratio = detail::ratio_jet(p.oscillator, x, order);
  return p.amplitude.taylor(x, order) * to_complex(log(ratio));
}

inline Complex f1_value(const ProblemSpec& p, double x) {
  if (x == 0.0) return p.amplitude.value(0.0) / std::pow(p.oscillator.derivative(0.0, 1), p.alpha);
  return p.amplitude.value(x) * std::pow(x / p.oscillator.value(x), p.alpha);
}

inline Complex f2_value(const ProblemSpec& p, double x) {
  if (x == 0.0) return p.amplitude.value(0.0) * std::log(1.0 / p.oscillator.derivative(0.0, 1));
  return p.amplitude.value(x) * std::log(x / p.oscillator.value(x));
}

/// Derivatives f1^{(j)}(x), j = 0..max_order.
inline std::vector<Complex> f1_derivatives(const ProblemSpec& p, double x, std::size_t max_order) {
  const CSeries s = f1_taylor(p, x, max_order);
  std::vector<Complex> out(max_order + 1);
  for (std::size_t j = 0; j <= max_order; ++j) out[j] = s[j] * detail::factorial(j);
  return out;
}

/// The regularized amplitudes as stand-alone Amplitude objects. f2 is present
/// only for AlgebraicLog problems.
inline std::pair<Amplitude, std::optional<Amplitude>> make_f1_f2(const ProblemSpec& p) {
  if (p.oscillator.max_order < 1) fail(ErrorKind::InvalidOscillator, "g'(0) is not available");
  if (!(p.oscillator.derivative(0.0, 1) > 0.0)) fail(ErrorKind::InvalidOscillator, "g'(0) must be positive");

  const std::size_t order_cap =
      p.oscillator.max_order == kUnlimitedOrder ? p.amplitude.max_order : std::min(p.amplitude.max_order, p.oscillator.max_order - 1);

  Amplitude f1;
  f1.value = [p](double x) { return f1_value(p, x); };
  f1.jet = [p](double x, std::size_t order) { return f1_taylor(p, x, order); };
  f1.max_order = order_cap;
  f1.finite_difference = p.amplitude.finite_difference;

  std::optional<Amplitude> f2;
  if (p.kind == SingularityKind::AlgebraicLog) {
    Amplitude a;
    a.value = [p](double x) { return f2_value(p, x); };
    a.jet = [p](double x, std::size_t order) { return f2_taylor(p, x, order); };
    a.max_order = order_cap;
    a.finite_difference = p.amplitude.finite_difference;
    f2 = std::move(a);
  }
  return {std::move(f1), std::move(f2)};
}

/// The algebraic-kind problem ∫ f2 x^α e^{iwg} that carries the log split's remainder.
inline ProblemSpec f2_problem(const ProblemSpec& p) {
  ProblemSpec q = p;
  q.id = p.id + ":f2";
  q.kind = SingularityKind::Algebraic;
  q.amplitude = *make_f1_f2(p).second;
  return q;
}

// ---------------------------------------------------------------------------
// Built-in problems
// ---------------------------------------------------------------------------

inline std::vector<std::string> builtin_ids() { return {"ex51", "ex52", "ex53a", "ex53b", "ex54"}; }

/**
 * Registry of the benchmark integrals on [0,1]:
 *  ex51/ex54  ∫ e^{iw}(1-x)(2-x)^α x^α e^{-iwx} dx
 *  ex52       ∫ x^α log x e^{iwx} / (1+x²) dx
 *  ex53a      ∫ x^α e^{iw(x²+x+1)} / (1+x²) dx
 *  ex53b      ∫ x^α log x e^{iw(x²+x+1)} / (1+x²) dx
 */
inline ProblemSpec builtin_problem(const std::string& id, double alpha, double w) {
  auto rational = Amplitude::from_generic([](auto x) { return 1.0 / (1.0 + x * x); });
  auto quadratic = Oscillator::from_generic([](auto x) { return x * x + x + 1.0; });

  if (id == "ex51" || id == "ex54") {
    const Complex phase = std::exp(Complex(0.0, w));
    auto f = Amplitude::from_generic([phase, alpha](auto x) {
      using std::pow;
      return phase * ((1.0 - x) * pow(2.0 - x, alpha));
    });
    return make_problem(id, std::move(f), Oscillator::identity(), 1.0, alpha, SingularityKind::Algebraic, -w);
  }
  if (id == "ex52") {
    return make_problem(id, std::move(rational), Oscillator::identity(), 1.0, alpha, SingularityKind::AlgebraicLog, w);
  }
  if (id == "ex53a") {
    return make_problem(id, std::move(rational), quadratic, 1.0, alpha, SingularityKind::Algebraic, w);
  }
  if (id == "ex53b") {
    return make_problem(id, std::move(rational), quadratic, 1.0, alpha, SingularityKind::AlgebraicLog, w);
  }
  fail(ErrorKind::Parameter, "unknown problem id '" + id + "'");
}

}  // namespace oscquad
