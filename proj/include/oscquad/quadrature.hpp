#pragma once

/**
 * @file quadrature.hpp
 * @brief Assembly of the Levin and Filon quadrature values and method dispatch.
 *
 * Algebraic kind, with G = g(a):
 *   Q = [G^{1+α} q1(a) + c0 (1 - e^{-iwG}) G^α + h(a)] e^{iwG}
 * Log kind:
 *   Q = Q_alg[f2] + [(q1(a) log G + l1(a)) G^{1+α} + (c0 log G + d0)(1 - e^{-iwG}) G^α + h_log(a)] e^{iwG}
 * The lower limit contributes nothing for α > -1.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "baselines.hpp"
#include "cheb.hpp"
#include "errors.hpp"
#include "filon.hpp"
#include "hermite.hpp"
#include "levin.hpp"
#include "numkernel.hpp"
#include "problem.hpp"
#include "result.hpp"

namespace oscquad {

struct QuadOptions {
  /// Node family for the frequency-space Levin and Filon paths.
  GridFamily frequency_grid = GridFamily::LobattoModified;
  LevinBasis basis = LevinBasis::Chebyshev;
  TsvdOptions tsvd;
  KernelConfig kernel;
};

/// Antiderivative bracket of the algebraic kind at g(x) = gx (without e^{iwgx}).
inline Complex alg_bracket(double alpha, double w, double gx, Complex c0, Complex q1x, const KernelConfig& cfg = {}) {
  const Complex damp = 1.0 - std::exp(Complex(0.0, -w * gx));
  return std::pow(gx, 1.0 + alpha) * q1x + c0 * damp * std::pow(gx, alpha) + kernel_h_alg(c0, alpha, w, gx, cfg);
}

/// Extra antiderivative bracket of the log kind at g(x) = gx (without e^{iwgx}).
inline Complex log_bracket(double alpha, double w, double gx, Complex c0, Complex q1x, Complex d0, Complex l1x,
                           const KernelConfig& cfg = {}) {
  const double lg = std::log(gx);
  const Complex damp = 1.0 - std::exp(Complex(0.0, -w * gx));
  return (q1x * lg + l1x) * std::pow(gx, 1.0 + alpha) + (c0 * lg + d0) * damp * std::pow(gx, alpha) +
         kernel_h_log(c0, d0, alpha, w, gx, cfg);
}

/// Frequency-space node set: n Lobatto points including both ends, or {0} plus n Radau points.
inline std::vector<double> frequency_nodes(GridFamily family, int n, double a) {
  if (family == GridFamily::RadauModified) return radau_grid(n, a).nodes;
  if (n < 3) fail(ErrorKind::Parameter, "frequency-space methods on Lobatto points need n >= 3");
  return lobatto_grid(n - 1, a).nodes;
}

namespace detail {

inline Complex upper_phase(const ProblemSpec& p) {
  return std::exp(Complex(0.0, p.w * p.g_at_end())) * p.phase_shift;
}

inline void absorb(QuadratureDiagnostics& d, double residual, int truncated, double smallest_sv) {
  d.residual_norm = std::max(d.residual_norm, residual);
  d.tsvd_truncated += truncated;
  d.smallest_sv = d.smallest_sv == 0.0 ? smallest_sv : std::min(d.smallest_sv, smallest_sv);
}

inline void require_kind(const ProblemSpec& p, SingularityKind k, const char* who) {
  if (p.kind != k) fail(ErrorKind::Parameter, std::string(who) + " called with the wrong singularity kind");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Levin, physical space (s = 0)
// ---------------------------------------------------------------------------

inline QuadratureResult quad_alg_physical(const ProblemSpec& p, const ChebGrid& grid, const QuadOptions& opt = {}) {
  detail::require_kind(p, SingularityKind::Algebraic, "quad_alg");
  const LevinSolution sol = solve_alg(p, grid, opt.tsvd);
  QuadratureResult r;
  r.method = Method::LevinPhysical;
  r.n = grid.n;
  r.s = 0;
  detail::absorb(r.diagnostics, sol.residual_norm, sol.tsvd_truncated, sol.smallest_sv);
  r.value = alg_bracket(p.alpha, p.w, p.g_at_end(), sol.c0, sol.q1_values.back(), opt.kernel) * detail::upper_phase(p);
  return r;
}

inline QuadratureResult quad_log_physical(const ProblemSpec& p, const ChebGrid& grid, const QuadOptions& opt = {}) {
  detail::require_kind(p, SingularityKind::AlgebraicLog, "quad_log");
  const auto [first, second] = solve_log(p, grid, opt.tsvd);
  QuadratureResult r = quad_alg_physical(f2_problem(p), grid, opt);
  detail::absorb(r.diagnostics, first.residual_norm, first.tsvd_truncated, first.smallest_sv);
  detail::absorb(r.diagnostics, second.residual_norm, second.tsvd_truncated, second.smallest_sv);
  r.value += log_bracket(p.alpha, p.w, p.g_at_end(), first.c0, first.q1_values.back(), second.c0,
                         second.q1_values.back(), opt.kernel) *
             detail::upper_phase(p);
  return r;
}

// ---------------------------------------------------------------------------
// Levin, frequency space (any s)
// ---------------------------------------------------------------------------

inline QuadratureResult quad_alg_frequency(const ProblemSpec& p, const std::vector<double>& nodes, int s,
                                           const QuadOptions& opt = {}) {
  detail::require_kind(p, SingularityKind::Algebraic, "quad_alg");
  const HermiteData data = f1_hermite_data(p, nodes, s);
  const FrequencyLevinSolution sol = solve_frequency(p, data, opt.basis, opt.tsvd);
  QuadratureResult r;
  r.method = Method::LevinFrequency;
  r.n = static_cast<int>(nodes.size()) - 1;
  r.s = s;
  detail::absorb(r.diagnostics, sol.residual_norm, sol.tsvd_truncated, sol.smallest_sv);
  const Complex q1a = frequency_q1_value(p, sol, p.a);
  r.value = alg_bracket(p.alpha, p.w, p.g_at_end(), sol.c0, q1a, opt.kernel) * detail::upper_phase(p);
  return r;
}

inline QuadratureResult quad_log_frequency(const ProblemSpec& p, const std::vector<double>& nodes, int s,
                                           const QuadOptions& opt = {}) {
  detail::require_kind(p, SingularityKind::AlgebraicLog, "quad_log");
  const HermiteData data = f1_hermite_data(p, nodes, s);
  const FrequencyLevinSolution first = solve_frequency(p, data, opt.basis, opt.tsvd);
  const FrequencyLevinSolution second = solve_frequency(p, log_second_target(p, first, data), opt.basis, opt.tsvd);
  QuadratureResult r = quad_alg_frequency(f2_problem(p), nodes, s, opt);
  detail::absorb(r.diagnostics, first.residual_norm, first.tsvd_truncated, first.smallest_sv);
  detail::absorb(r.diagnostics, second.residual_norm, second.tsvd_truncated, second.smallest_sv);
  r.value += log_bracket(p.alpha, p.w, p.g_at_end(), first.c0, frequency_q1_value(p, first, p.a), second.c0,
                         frequency_q1_value(p, second, p.a), opt.kernel) *
             detail::upper_phase(p);
  return r;
}

// ---------------------------------------------------------------------------
// Filon
// ---------------------------------------------------------------------------

inline QuadratureResult quad_filon(const ProblemSpec& p, const HermiteData& data, const KernelConfig& cfg = {}) {
  const int count = data.conditions();
  const bool log_kind = p.kind == SingularityKind::AlgebraicLog;
  const MomentTable m = moment_table(p.alpha, p.w, p.g_at_end(), count, log_kind, cfg);
  const FilonCoefficients c = hermite_solve(data, p);
  QuadratureResult r;
  r.method = Method::Filon;
  r.n = static_cast<int>(data.nodes.size()) - 1;
  r.s = data.multiplicity.empty() ? 0 : data.multiplicity.front() - 1;
  r.diagnostics.interpolation_residual = c.interpolation_residual;
  Complex acc(0.0);
  if (log_kind) {
    for (int k = 0; k < count; ++k) acc += c.p[static_cast<std::size_t>(k)] * (*m.nu)[static_cast<std::size_t>(k)];
    const ProblemSpec q = f2_problem(p);
    const HermiteData d2 = hermite_like(data, [&q](double x, std::size_t order) { return f1_taylor(q, x, order); });
    const FilonCoefficients c2 = hermite_solve(d2, q);
    r.diagnostics.interpolation_residual = std::max(r.diagnostics.interpolation_residual, c2.interpolation_residual);
    for (int k = 0; k < count; ++k) acc += c2.p[static_cast<std::size_t>(k)] * m.mu[static_cast<std::size_t>(k)];
  } else {
    for (int k = 0; k < count; ++k) acc += c.p[static_cast<std::size_t>(k)] * m.mu[static_cast<std::size_t>(k)];
  }
  r.value = acc * p.phase_shift;
  return r;
}

inline QuadratureResult quad_filon(const ProblemSpec& p, const std::vector<double>& nodes, int s,
                                   const KernelConfig& cfg = {}) {
  return quad_filon(p, f1_hermite_data(p, nodes, s), cfg);
}

// ---------------------------------------------------------------------------
// Entry points
// ---------------------------------------------------------------------------

/// s = 0: physical-space Levin on the n-point Radau grid. s >= 1: frequency-space Levin.
inline QuadratureResult quad_alg(const ProblemSpec& p, int n, int s, const QuadOptions& opt = {}) {
  if (s < 0) fail(ErrorKind::Parameter, "s must be non-negative");
  if (s == 0) return quad_alg_physical(p, radau_grid(n, p.a), opt);
  return quad_alg_frequency(p, frequency_nodes(opt.frequency_grid, n, p.a), s, opt);
}

inline QuadratureResult quad_log(const ProblemSpec& p, int n, int s, const QuadOptions& opt = {}) {
  if (s < 0) fail(ErrorKind::Parameter, "s must be non-negative");
  if (s == 0) return quad_log_physical(p, radau_grid(n, p.a), opt);
  return quad_log_frequency(p, frequency_nodes(opt.frequency_grid, n, p.a), s, opt);
}

/// Levin value for either kind.
inline QuadratureResult quad_levin(const ProblemSpec& p, int n, int s, const QuadOptions& opt = {}) {
  return p.kind == SingularityKind::Algebraic ? quad_alg(p, n, s, opt) : quad_log(p, n, s, opt);
}

inline QuadratureResult compute(const ProblemSpec& p, Method method, int n, int s, const QuadOptions& opt = {}) {
  if (s < 0) fail(ErrorKind::Parameter, "s must be non-negative");
  switch (method) {
    case Method::LevinPhysical:
      if (s != 0) fail(ErrorKind::Capability, "physical-space Levin is derivative-free and supports s = 0 only; use levin-freq");
      return p.kind == SingularityKind::Algebraic ? quad_alg_physical(p, radau_grid(n, p.a), opt)
                                                  : quad_log_physical(p, radau_grid(n, p.a), opt);
    case Method::LevinFrequency: {
      const auto nodes = frequency_nodes(opt.frequency_grid, n, p.a);
      return p.kind == SingularityKind::Algebraic ? quad_alg_frequency(p, nodes, s, opt) : quad_log_frequency(p, nodes, s, opt);
    }
    case Method::Filon:
      return quad_filon(p, frequency_nodes(opt.frequency_grid, n, p.a), s, opt.kernel);
    case Method::CMFP: {
      if (!p.oscillator.linear) fail(ErrorKind::Capability, "CMFP requires a linear oscillator");
      CMFPParams params = CMFPParams::defaults(n, p.alpha);
      QuadratureResult r = cmfp(p, params);
      r.s = s;
      return r;
    }
    case Method::Oracle: {
      QuadratureResult r;
      r.method = Method::Oracle;
      r.n = n;
      r.s = s;
      const OracleResult o = reference_oracle(p);
      r.value = o.value;
      r.diagnostics.evaluations = o.evaluations;
      return r;
    }
  }
  fail(ErrorKind::Parameter, "unknown method");
}

}  // namespace oscquad
