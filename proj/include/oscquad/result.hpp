#pragma once

#include <complex>
#include <string>

#include "errors.hpp"

namespace oscquad {

enum class Method { LevinPhysical, LevinFrequency, Filon, CMFP, Oracle };

inline const char* to_string(Method m) {
  switch (m) {
    case Method::LevinPhysical: return "levin";
    case Method::LevinFrequency: return "levin-freq";
    case Method::Filon: return "filon";
    case Method::CMFP: return "cmfp";
    case Method::Oracle: return "oracle";
  }
  return "?";
}

inline Method parse_method(const std::string& s) {
  if (s == "levin" || s == "levin-physical") return Method::LevinPhysical;
  if (s == "levin-freq" || s == "levin-frequency") return Method::LevinFrequency;
  if (s == "filon") return Method::Filon;
  if (s == "cmfp") return Method::CMFP;
  if (s == "oracle") return Method::Oracle;
  fail(ErrorKind::Parameter, "unknown method '" + s + "'");
}

struct QuadratureDiagnostics {
  /// max |L x - rhs| over the collocation systems solved.
  double residual_norm = 0.0;
  int tsvd_truncated = 0;
  double smallest_sv = 0.0;
  /// Filon a-posteriori interpolation residual.
  double interpolation_residual = 0.0;
  /// Number of integrand evaluations (baselines and oracle).
  long evaluations = 0;
  std::string note;
};

struct QuadratureResult {
  std::complex<double> value;
  Method method = Method::LevinPhysical;
  int s = 0;
  int n = 0;
  QuadratureDiagnostics diagnostics;
};

}  // namespace oscquad
