#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "oscquad/baselines.hpp"
#include "oscquad/filon.hpp"
#include "oscquad/quadrature.hpp"

using namespace oscquad;

namespace {

Complex moment_oracle(double alpha, double w, double g_a, int k, bool with_log) {
  return oracles::oscillatory_singular_integral(
      [=](double u) {
        const Complex v = std::pow(u, k - 1 + alpha) * std::exp(Complex(0.0, w * u));
        return with_log ? v * std::log(u) : v;
      },
      0.0, g_a, w);
}

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

std::vector<double> lobatto_nodes(int n) { return frequency_nodes(GridFamily::LobattoModified, n, 1.0); }

double table_error(const std::string& id, int n, int s, Method m) {
  const auto p = builtin_problem(id, 0.5, 100.0);
  const Complex ref = reference_oracle(p).value;
  return std::abs(compute(p, m, n, s).value - ref);
}

}  // namespace

TEST(Moments, FirstMuMatchesQuadrature) {
  const auto mu = moments_mu(0.5, 20.0, 1.0, 3);
  EXPECT_LE(rel(mu[0], moment_oracle(0.5, 20.0, 1.0, 1, false)), 1e-11);
  EXPECT_LE(rel(mu[2], moment_oracle(0.5, 20.0, 1.0, 3, false)), 1e-10);
}

TEST(Moments, MuAcrossParameters) {
  for (double alpha : {0.5, -0.5, 0.9}) {
    for (double w : {-37.0, 3.0, 150.0}) {
      for (double ga : {0.5, 2.0}) {
        const auto mu = moments_mu(alpha, w, ga, 12);
        for (int k : {1, 5, 12}) {
          EXPECT_LE(rel(mu[static_cast<std::size_t>(k - 1)], moment_oracle(alpha, w, ga, k, false)), 1e-9)
              << alpha << " " << w << " " << ga << " " << k;
        }
      }
    }
  }
}

TEST(Moments, AlphaNearZeroIsExponentialMoment) {
  const double w = 13.0, alpha = 1e-9;
  const Complex want = (std::exp(Complex(0.0, w)) - 1.0) / Complex(0.0, w);
  EXPECT_LE(rel(moments_mu(alpha, w, 1.0, 1)[0], want), 1e-7);
}

TEST(Moments, MuRecurrenceResidual) {
  for (double alpha : {0.5, -0.5}) {
    for (double w : {20.0, 1000.0}) {
      const double ga = 1.5;
      const auto mu = moments_mu(alpha, w, ga, 30);
      const Complex iw(0.0, w);
      for (int j = 1; j < 30; ++j) {
        const Complex lhs = mu[static_cast<std::size_t>(j)];
        const Complex res = lhs + ((j + alpha) / iw) * mu[static_cast<std::size_t>(j - 1)] -
                            std::pow(ga, j + alpha) * std::exp(Complex(0.0, w * ga)) / iw;
        EXPECT_LE(std::abs(res), 1e-12 * std::abs(lhs)) << alpha << " " << w << " " << j;
      }
    }
  }
}

TEST(Moments, FirstNuMatchesQuadrature) {
  const auto mu = moments_mu(0.5, 20.0, 1.0, 2);
  const auto nu = moments_nu(0.5, 20.0, 1.0, mu, 2);
  EXPECT_LE(rel(nu[0], moment_oracle(0.5, 20.0, 1.0, 1, true)), 1e-9);
  EXPECT_LE(rel(nu[1], moment_oracle(0.5, 20.0, 1.0, 2, true)), 1e-9);
}

TEST(Moments, NuAcrossParameters) {
  for (double alpha : {0.5, -0.5}) {
    for (double w : {-60.0, 5.0, 90.0}) {
      for (double ga : {0.7, 2.0}) {
        const auto mu = moments_mu(alpha, w, ga, 8);
        const auto nu = moments_nu(alpha, w, ga, mu, 8);
        for (int k : {1, 4, 8}) {
          EXPECT_LE(rel(nu[static_cast<std::size_t>(k - 1)], moment_oracle(alpha, w, ga, k, true)), 1e-8)
              << alpha << " " << w << " " << ga << " " << k;
        }
      }
    }
  }
}

TEST(Moments, NuRecurrenceResidual) {
  const double alpha = -0.5, w = 400.0, ga = 2.0;
  const auto mu = moments_mu(alpha, w, ga, 20);
  const auto nu = moments_nu(alpha, w, ga, mu, 20);
  const Complex iw(0.0, w);
  for (int j = 1; j < 20; ++j) {
    const Complex lhs = nu[static_cast<std::size_t>(j)];
    const Complex res = lhs + ((j + alpha) / iw) * nu[static_cast<std::size_t>(j - 1)] +
                        mu[static_cast<std::size_t>(j - 1)] / iw -
                        std::pow(ga, j + alpha) * std::log(ga) * std::exp(Complex(0.0, w * ga)) / iw;
    EXPECT_LE(std::abs(res), 1e-12 * std::abs(lhs)) << j;
  }
}

TEST(Moments, RejectsBadArguments) {
  EXPECT_THROW(moments_mu(0.5, 0.0, 1.0, 3), Error);
  EXPECT_THROW(moments_mu(0.5, 1.0, 0.0, 3), Error);
  EXPECT_THROW(moments_nu(0.5, 1.0, 1.0, {}, 3), Error);
}

TEST(HermiteSolve, MemberOfSpan) {
  const auto g = Oscillator::polynomial({0.0, 1.0, 1.0});
  const auto p = make_problem("t", Amplitude::polynomial({1.0}), g, 1.0, 0.5, SingularityKind::Algebraic, 10.0);
  const auto nodes = lobatto_nodes(6);
  const auto data = hermite_data(
      [&g](double x, std::size_t order) {
        const RSeries gs = g.taylor(x, order + 1);
        const RSeries t = differentiate(gs) * (2.0 + 3.0 * gs.truncated(order));
        CSeries c(order);
        for (std::size_t j = 0; j <= order; ++j) c[j] = t[j];
        return c;
      },
      nodes, 1);
  const auto c = hermite_solve(data, p);
  ASSERT_EQ(c.p.size(), static_cast<std::size_t>(data.conditions()));
  EXPECT_NEAR(std::abs(c.p[0] - 2.0), 0.0, 1e-11);
  EXPECT_NEAR(std::abs(c.p[1] - 3.0), 0.0, 1e-11);
  for (std::size_t k = 2; k < c.p.size(); ++k) EXPECT_NEAR(std::abs(c.p[k]), 0.0, 1e-10) << k;
}

TEST(HermiteSolve, IdentityOscillatorIsPolynomialInterpolation) {
  const auto p = make_problem("t", Amplitude::polynomial({0.5, -1.0, 0.0, 2.0}), Oscillator::identity(), 1.0, 0.5,
                              SingularityKind::Algebraic, 10.0);
  const auto c = hermite_solve(f1_hermite_data(p, lobatto_nodes(5), 0), p);
  const std::vector<double> want{0.5, -1.0, 0.0, 2.0, 0.0, 0.0};
  for (std::size_t k = 0; k < want.size(); ++k) EXPECT_NEAR(std::abs(c.p[k] - want[k]), 0.0, 1e-12) << k;
}

TEST(HermiteSolve, ConfluentConditionsHold) {
  const auto p = builtin_problem("ex53a", 0.5, 100.0);
  const auto nodes = lobatto_nodes(4);
  const auto data = f1_hermite_data(p, nodes, 1);
  const auto c = hermite_solve(data, p);
  EXPECT_LE(c.interpolation_residual, 1e-9);
  // rebuild p and p' at both ends from the Ψ basis
  for (double x : {nodes.front(), nodes.back()}) {
    const RSeries g = p.oscillator.taylor(x, 2);
    const RSeries gp = differentiate(g);
    Complex v(0.0), d(0.0);
    double gk = 1.0, dgk = 0.0;
    for (std::size_t k = 0; k < c.p.size(); ++k) {
      v += c.p[k] * gp[0] * gk;
      d += c.p[k] * (gp[1] * gk + gp[0] * dgk);
      dgk = dgk * g[0] + gk * g[1];
      gk *= g[0];
    }
    const CSeries f = f1_taylor(p, x, 1);
    EXPECT_LE(std::abs(v - f[0]), 1e-9 * (1 + std::abs(f[0]))) << x;
    EXPECT_LE(std::abs(d - f[1]), 1e-9 * (1 + std::abs(f[1]))) << x;
  }
}

TEST(HermiteSolve, RefusesOversizedBasis) {
  const auto p = builtin_problem("ex51", 0.5, 100.0);
  try {
    hermite_solve(f1_hermite_data(p, lobatto_nodes(30), 6), p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateSystem);
  }
}

TEST(QuadFilon, ZeroAmplitude) {
  const auto p = make_problem("zero", Amplitude::polynomial({0.0}), Oscillator::polynomial({0.0, 1.0, 1.0}), 1.0, 0.5,
                              SingularityKind::AlgebraicLog, 100.0);
  EXPECT_EQ(std::abs(quad_filon(p, lobatto_nodes(4), 1).value), 0.0);
}

TEST(QuadFilon, ExactForAmplitudeInSpan) {
  // f = g'(2+3g) with g = x² + x: Filon is exact, compare against the moment combination directly
  const double alpha = -0.5, w = 80.0;
  const auto p = make_problem("t", Amplitude::from_generic([](auto x) {
                                using std::pow;
                                // (g/x)^α = (1+x)^{-1/2}
                                return (2.0 * x + 1.0) * (2.0 + 3.0 * (x * x + x)) * pow(1.0 + x, -0.5);
                              }),
                              Oscillator::polynomial({0.0, 1.0, 1.0}), 1.0, alpha, SingularityKind::Algebraic, w);
  const Complex got = quad_filon(p, lobatto_nodes(6), 0).value;
  const auto mu = moments_mu(alpha, w, 2.0, 2);
  const Complex want = 2.0 * mu[0] + 3.0 * mu[1];
  EXPECT_LE(rel(got, want), 1e-10);
}

TEST(QuadFilon, TableOneFilonError) {
  const double err = table_error("ex53a", 4, 0, Method::Filon);
  EXPECT_GE(err, 4.3048e-05 / 3.0);
  EXPECT_LE(err, 4.3048e-05 * 3.0);
}

TEST(QuadFilon, TableTwoHighOrderError) {
  const double err = table_error("ex53b", 6, 2, Method::Filon);
  EXPECT_GE(err, 1.3454e-07 / 3.0);
  EXPECT_LE(err, 1.3454e-07 * 3.0);
}

TEST(QuadFilon, EquivalentToLevinInPowersOfG) {
  QuadOptions opt;
  opt.basis = LevinBasis::PowersOfG;
  for (const char* id : {"ex51", "ex54"}) {
    for (double alpha : {0.5, -0.5}) {
      for (double w : {100.0, 1000.0}) {
        const auto p = builtin_problem(id, alpha, w);
        for (int n : {4, 8, 12}) {
          const auto nodes = lobatto_nodes(n);
          const Complex f = quad_filon(p, nodes, 0).value;
          const Complex l = quad_alg_frequency(p, nodes, 0, opt).value;
          EXPECT_LE(std::abs(f - l), 1e-11 * (1 + std::abs(l))) << id << " " << alpha << " " << w << " " << n;
        }
      }
    }
  }
}
