#pragma once

/**
 * @file series.hpp
 * @brief Truncated Taylor series ("jets") with field arithmetic.
 *
 * A Series<T> of order N holds the Taylor coefficients c_0..c_N of a function
 * about some expansion point, c_k = f^{(k)}(x0)/k!. Arithmetic follows the usual
 * power-series recurrences, so any expression written generically over the
 * scalar type can be differentiated exactly by evaluating it on the jet
 * [x0, 1, 0, ...].
 */

#include <algorithm>
#include <cassert>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace oscquad {

template <class T>
class Series {
 public:
  using value_type = T;

  Series() : c_(1, T(0)) {}
  explicit Series(std::size_t order, T constant = T(0)) : c_(order + 1, T(0)) { c_[0] = constant; }
  explicit Series(std::vector<T> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) c_.push_back(T(0));
  }

  /// The identity jet at x0: x0 + t.
  static Series variable(T x0, std::size_t order) {
    Series s(order, x0);
    if (order >= 1) s.c_[1] = T(1);
    return s;
  }

  std::size_t order() const { return c_.size() - 1; }
  const T& operator[](std::size_t k) const { return c_[k]; }
  T& operator[](std::size_t k) { return c_[k]; }
  const std::vector<T>& coeffs() const { return c_; }

  /// k-th derivative at the expansion point.
  T derivative(std::size_t k) const {
    T fact(1);
    for (std::size_t j = 2; j <= k; ++j) fact *= T(static_cast<double>(j));
    return k <= order() ? c_[k] * fact : T(0);
  }

  template <class U>
  Series<U> cast() const {
    std::vector<U> out(c_.begin(), c_.end());
    return Series<U>(std::move(out));
  }

  Series truncated(std::size_t order) const {
    std::vector<T> out(order + 1, T(0));
    for (std::size_t k = 0; k <= std::min(order, this->order()); ++k) out[k] = c_[k];
    return Series(std::move(out));
  }

  Series& operator+=(const Series& o) {
    match(o);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
  }
  Series& operator-=(const Series& o) {
    match(o);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Series& operator*=(const Series& o) { return *this = *this * o; }
  Series& operator/=(const Series& o) { return *this = *this / o; }
  Series& operator+=(const T& a) {
    c_[0] += a;
    return *this;
  }
  Series& operator-=(const T& a) {
    c_[0] -= a;
    return *this;
  }
  Series& operator*=(const T& a) {
    for (auto& v : c_) v *= a;
    return *this;
  }
  Series& operator/=(const T& a) {
    for (auto& v : c_) v /= a;
    return *this;
  }

  Series operator-() const {
    Series r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }

  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }
  friend Series operator+(Series a, const T& b) { return a += b; }
  friend Series operator+(const T& b, Series a) { return a += b; }
  friend Series operator-(Series a, const T& b) { return a -= b; }
  friend Series operator-(const T& b, const Series& a) { return -a + b; }
  friend Series operator*(Series a, const T& b) { return a *= b; }
  friend Series operator*(const T& b, Series a) { return a *= b; }
  friend Series operator/(Series a, const T& b) { return a /= b; }
  friend Series operator/(const T& b, const Series& a) { return Series(a.order(), b) / a; }

  friend Series operator*(const Series& a, const Series& b) {
    const std::size_t n = std::min(a.order(), b.order());
    Series r(n);
    for (std::size_t k = 0; k <= n; ++k) {
      T acc(0);
      for (std::size_t j = 0; j <= k; ++j) acc += a.c_[j] * b.c_[k - j];
      r.c_[k] = acc;
    }
    return r;
  }

  friend Series operator/(const Series& a, const Series& b) {
    const std::size_t n = std::min(a.order(), b.order());
    Series r(n);
    for (std::size_t k = 0; k <= n; ++k) {
      T acc = a.c_[k];
      for (std::size_t j = 1; j <= k; ++j) acc -= b.c_[j] * r.c_[k - j];
      r.c_[k] = acc / b.c_[0];
    }
    return r;
  }

  /// d/dt, one order lower.
  friend Series differentiate(const Series& a) {
    if (a.order() == 0) return Series(0);
    Series r(a.order() - 1);
    for (std::size_t k = 1; k <= a.order(); ++k) r.c_[k - 1] = a.c_[k] * T(static_cast<double>(k));
    return r;
  }

  /// f(x0 + t) / t when f(x0) = 0, one order lower.
  friend Series divide_by_t(const Series& a) {
    if (a.order() == 0) return Series(0);
    return Series(std::vector<T>(a.c_.begin() + 1, a.c_.end()));
  }

  friend Series exp(const Series& a) {
    using std::exp;
    const std::size_t n = a.order();
    Series r(n);
    r.c_[0] = exp(a.c_[0]);
    for (std::size_t k = 1; k <= n; ++k) {
      T acc(0);
      for (std::size_t j = 1; j <= k; ++j) acc += T(static_cast<double>(j)) * a.c_[j] * r.c_[k - j];
      r.c_[k] = acc / T(static_cast<double>(k));
    }
    return r;
  }

  friend Series log(const Series& a) {
    using std::log;
    const std::size_t n = a.order();
    Series r(n);
    r.c_[0] = log(a.c_[0]);
    for (std::size_t k = 1; k <= n; ++k) {
      T acc = a.c_[k] * T(static_cast<double>(k));
      for (std::size_t j = 1; j < k; ++j) acc -= T(static_cast<double>(j)) * r.c_[j] * a.c_[k - j];
      r.c_[k] = acc / (T(static_cast<double>(k)) * a.c_[0]);
    }
    return r;
  }

  /// a^p for a real exponent, via the J.C.P. Miller recurrence (needs a_0 != 0).
  friend Series pow(const Series& a, double p) {
    using std::pow;
    const std::size_t n = a.order();
    Series r(n);
    r.c_[0] = pow(a.c_[0], T(p));
    for (std::size_t k = 1; k <= n; ++k) {
      T acc(0);
      for (std::size_t j = 1; j <= k; ++j) {
        acc += (T(p * static_cast<double>(j)) - T(static_cast<double>(k - j))) * a.c_[j] * r.c_[k - j];
      }
      r.c_[k] = acc / (T(static_cast<double>(k)) * a.c_[0]);
    }
    return r;
  }

  friend Series sqrt(const Series& a) { return pow(a, 0.5); }

  friend Series sin(const Series& a) { return sincos(a).first; }
  friend Series cos(const Series& a) { return sincos(a).second; }

  friend std::pair<Series, Series> sincos(const Series& a) {
    using std::cos;
    using std::sin;
    const std::size_t n = a.order();
    Series s(n), c(n);
    s.c_[0] = sin(a.c_[0]);
    c.c_[0] = cos(a.c_[0]);
    for (std::size_t k = 1; k <= n; ++k) {
      T as(0), ac(0);
      for (std::size_t j = 1; j <= k; ++j) {
        const T ja = T(static_cast<double>(j)) * a.c_[j];
        as += ja * c.c_[k - j];
        ac -= ja * s.c_[k - j];
      }
      s.c_[k] = as / T(static_cast<double>(k));
      c.c_[k] = ac / T(static_cast<double>(k));
    }
    return {s, c};
  }

  /// Evaluate the truncated polynomial at offset t from the expansion point.
  T evaluate(T t) const {
    T acc(0);
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * t + c_[k];
    return acc;
  }

 private:
  void match(const Series& o) {
    if (o.c_.size() < c_.size()) c_.resize(o.c_.size());
  }

  std::vector<T> c_;
};

using RSeries = Series<double>;
using CSeries = Series<std::complex<double>>;

/// Promote a real jet to a complex one.
inline CSeries to_complex(const RSeries& s) { return s.cast<std::complex<double>>(); }

}  // namespace oscquad
