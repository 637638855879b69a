#pragma once

#include <Eigen/Dense>
#include <complex>

#include "errors.hpp"

namespace oscquad {

struct TsvdOptions {
  double threshold = 1e-8;
  /// Compare singular values against threshold * σ_max (true) or threshold itself (false).
  bool relative = false;
};

struct TsvdResult {
  Eigen::VectorXcd x;
  int truncated = 0;
  double smallest_sv = 0.0;
  double largest_sv = 0.0;
};

/**
 * Solve a square system, discarding singular directions below the threshold.
 * Without truncation this is a plain pivoted LU solve; with truncation the
 * minimum-norm solution over the retained directions is returned.
 */
inline TsvdResult tsvd_solve(const Eigen::MatrixXcd& a, const Eigen::VectorXcd& rhs, const TsvdOptions& opt = {}) {
  if (a.rows() != a.cols() || a.rows() != rhs.size()) fail(ErrorKind::Parameter, "tsvd_solve needs a square system");
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  TsvdResult out;
  out.largest_sv = sv.size() ? sv(0) : 0.0;
  out.smallest_sv = sv.size() ? sv(sv.size() - 1) : 0.0;
  const double cut = opt.relative ? opt.threshold * out.largest_sv : opt.threshold;

  Eigen::Index keep = 0;
  while (keep < sv.size() && sv(keep) >= cut && sv(keep) > 0.0) ++keep;
  if (keep == 0) fail(ErrorKind::DegenerateSystem, "all singular values are below the TSVD threshold");
  out.truncated = static_cast<int>(sv.size() - keep);

  if (out.truncated == 0) {
    out.x = a.fullPivLu().solve(rhs);
    return out;
  }
  const Eigen::VectorXcd proj = svd.matrixU().leftCols(keep).adjoint() * rhs;
  Eigen::VectorXcd scaled = proj;
  for (Eigen::Index i = 0; i < keep; ++i) scaled(i) /= sv(i);
  out.x = svd.matrixV().leftCols(keep) * scaled;
  return out;
}

}  // namespace oscquad
