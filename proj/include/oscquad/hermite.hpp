#pragma once

#include <complex>
#include <span>
#include <vector>

#include "cheb.hpp"
#include "errors.hpp"
#include "problem.hpp"
#include "series.hpp"

namespace oscquad {

/// Confluent interpolation data: at nodes[l], derivatives 0..multiplicity[l]-1.
struct HermiteData {
  std::vector<double> nodes;
  std::vector<int> multiplicity;
  /// values[l][j] = j-th derivative of the target at nodes[l].
  std::vector<std::vector<Complex>> values;

  /// Number of interpolation conditions, M + 1.
  int conditions() const {
    int m = 0;
    for (int v : multiplicity) m += v;
    return m;
  }
};

/// Endpoint multiplicity s+1, interior multiplicity 1.
inline std::vector<int> endpoint_multiplicities(std::size_t node_count, int s) {
  if (s < 0) fail(ErrorKind::Parameter, "asymptotic order s must be non-negative");
  std::vector<int> m(node_count, 1);
  if (!m.empty()) {
    m.front() = s + 1;
    m.back() = s + 1;
  }
  return m;
}

/// Hermite data of an amplitude (given as a Taylor-jet callable) on nodes.
template <class JetFn>
HermiteData hermite_data(JetFn&& jet, std::span<const double> nodes, int s) {
  HermiteData d;
  d.nodes.assign(nodes.begin(), nodes.end());
  d.multiplicity = endpoint_multiplicities(nodes.size(), s);
  d.values.resize(nodes.size());
  for (std::size_t l = 0; l < nodes.size(); ++l) {
    const int m = d.multiplicity[l];
    const CSeries t = jet(nodes[l], static_cast<std::size_t>(m - 1));
    d.values[l].resize(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) d.values[l][static_cast<std::size_t>(j)] = t.derivative(static_cast<std::size_t>(j));
  }
  return d;
}

/// Hermite data of another target on the nodes and multiplicities of `like`.
template <class JetFn>
HermiteData hermite_like(const HermiteData& like, JetFn&& jet) {
  HermiteData d;
  d.nodes = like.nodes;
  d.multiplicity = like.multiplicity;
  d.values.resize(d.nodes.size());
  for (std::size_t l = 0; l < d.nodes.size(); ++l) {
    const std::size_t m = static_cast<std::size_t>(d.multiplicity[l]);
    const CSeries t = jet(d.nodes[l], m - 1);
    d.values[l].resize(m);
    for (std::size_t j = 0; j < m; ++j) d.values[l][j] = t.derivative(j);
  }
  return d;
}

/// Hermite data of f1 for a problem.
inline HermiteData f1_hermite_data(const ProblemSpec& p, std::span<const double> nodes, int s) {
  return hermite_data([&p](double x, std::size_t order) { return f1_taylor(p, x, order); }, nodes, s);
}

}  // namespace oscquad
