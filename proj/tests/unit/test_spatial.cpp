#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dvflow/spatial.hpp"
#include "oracle.hpp"

using namespace dvflow;
using oracle::kTwoPi;

namespace {

Field sine(const Grid& g, int k = 1) {
  return oracle::sample([k](double x) { return std::sin(kTwoPi * k * x); }, g);
}

double max_abs(const Field& f) {
  double m = 0.0;
  for (double v : f) m = std::max(m, std::abs(v));
  return m;
}

class BothSchemes : public ::testing::TestWithParam<Scheme> {};

}  // namespace

TEST(Deriv, SpectralFirstDerivativeOfSineIsExact) {
  const Grid g(64);
  const Field d = deriv(sine(g), g, 1);
  const Field expected =
      oracle::sample([](double x) { return kTwoPi * std::cos(kTwoPi * x); }, g);
  EXPECT_LT(oracle::max_abs_diff(d, expected), 1e-12);
}

TEST_P(BothSchemes, DerivativeOfConstantIsZero) {
  const Grid g(32, GetParam());
  for (int order : {1, 2}) {
    EXPECT_LT(max_abs(deriv(Field(32, 3.7), g, order)), 1e-12);
  }
}

TEST_P(BothSchemes, IntegralOfDerivativeVanishes) {
  const Grid g(64, GetParam());
  std::mt19937_64 rng(3);
  std::normal_distribution<double> dist;
  Field f(64);
  for (double& v : f) v = dist(rng);
  EXPECT_LT(std::abs(integrate(deriv(f, g, 1), g)), 1e-12);
}

INSTANTIATE_TEST_SUITE_P(Schemes, BothSchemes,
                         ::testing::Values(Scheme::spectral, Scheme::fd4));

TEST(Deriv, Fd4SecondDerivativeMatchesStencilSymbol) {
  const int n = 64;
  const Grid g(n, Scheme::fd4);
  const Field f = sine(g);
  const Field d = deriv(f, g, 2);
  // Response of the five-point stencil to a unit-wavenumber mode.
  const double theta = kTwoPi * g.dx();
  const double symbol = (32.0 * std::cos(theta) - 2.0 * std::cos(2.0 * theta) - 30.0) /
                        (12.0 * g.dx() * g.dx());
  double max_err = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    max_err = std::max(max_err, std::abs(d[i] + kTwoPi * kTwoPi * f[i]));
  }
  const double predicted = std::abs(symbol + kTwoPi * kTwoPi) * max_abs(f);
  EXPECT_GT(predicted, 1e-6);
  EXPECT_NEAR(max_err, predicted, 1e-9);
  for (std::size_t i = 0; i < f.size(); ++i) {
    EXPECT_NEAR(d[i], symbol * f[i], 1e-9);
  }
}

TEST(Deriv, Fd4FirstDerivativeMatchesStencilSymbol) {
  const Grid g(32, Scheme::fd4);
  const Field f = sine(g, 3);
  const Field d = deriv(f, g, 1);
  const double theta = kTwoPi * 3 * g.dx();
  const double symbol = (8.0 * std::sin(theta) - std::sin(2.0 * theta)) / (6.0 * g.dx());
  for (std::size_t i = 0; i < f.size(); ++i) {
    EXPECT_NEAR(d[i], symbol * std::cos(kTwoPi * 3 * g.x(i)), 1e-10);
  }
}

TEST(Deriv, SpectralIsExactForBandLimitedData) {
  const Grid g(64);
  const auto f = [](double x) {
    return 0.3 + std::cos(kTwoPi * 4 * x) - 0.5 * std::sin(kTwoPi * 21 * x + 0.2);
  };
  const auto fxx = [](double x) {
    return -std::pow(kTwoPi * 4, 2) * std::cos(kTwoPi * 4 * x) +
           0.5 * std::pow(kTwoPi * 21, 2) * std::sin(kTwoPi * 21 * x + 0.2);
  };
  const Field d2 = deriv(oracle::sample(f, g), g, 2);
  EXPECT_LT(oracle::max_abs_diff(d2, oracle::sample(fxx, g)), 1e-8);
  const auto [d1, d2b] = deriv12(oracle::sample(f, g), g);
  EXPECT_LT(oracle::max_abs_diff(d2, d2b), 1e-9);
  EXPECT_LT(oracle::max_abs_diff(d1, deriv(oracle::sample(f, g), g, 1)), 1e-10);
}

TEST(Deriv, RejectsBadOrderAndLength) {
  const Grid g(16);
  EXPECT_THROW(deriv(Field(16, 1.0), g, 3), Error);
  EXPECT_THROW(deriv(Field(8, 1.0), g, 1), Error);
}

TEST(Dealias, RemovesModesAboveTwoThirds) {
  const Grid g(64);
  Field f = sine(g, 2);
  const Field high = sine(g, 30);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] += high[i];
  EXPECT_LT(oracle::max_abs_diff(dealias(f, g), sine(g, 2)), 1e-13);
  // Identity for finite differences.
  const Grid fd(64, Scheme::fd4);
  EXPECT_EQ(dealias(f, fd), f);
}

TEST(Integrate, Examples) {
  const Grid g(64);
  EXPECT_DOUBLE_EQ(integrate(Field(64, 2.5), g), 2.5);
  EXPECT_LT(std::abs(integrate(sine(g), g)), 1e-15);
  const Field sq = oracle::sample(
      [](double x) { return std::pow(2.0 + std::sin(kTwoPi * x), 2); }, g);
  EXPECT_NEAR(integrate(sq, g), 4.5, 1e-14);
}

TEST(LpNorm, Examples) {
  const Grid g(64);
  EXPECT_NEAR(lp_norm(Field(64, -3.0), g, 1.0), 3.0, 1e-15);
  EXPECT_NEAR(lp_norm(sine(g), g, 2.0), std::sqrt(0.5), 1e-15);
  const double sup = lp_norm(sine(g), g, kInfinity);
  EXPECT_GE(sup, 0.999);
  EXPECT_LE(sup, 1.0);
}

TEST(LpNorm, IsAbsolutelyHomogeneous) {
  const Grid g(32);
  Field f = oracle::sample([](double x) { return std::exp(std::sin(kTwoPi * x)) - 1.2; }, g);
  for (double p : {1.0, 1.5, 2.0, 4.0, kInfinity}) {
    Field scaled = f;
    for (double& v : scaled) v *= -2.5;
    EXPECT_NEAR(lp_norm(scaled, g, p), 2.5 * lp_norm(f, g, p), 1e-13) << p;
  }
  EXPECT_THROW(lp_norm(f, g, 0.5), Error);
}

TEST(SobolevSeminorm, Examples) {
  const Grid g(64);
  for (int k = 1; k <= 4; ++k) {
    EXPECT_LT(sobolev_seminorm(Field(64, 1.3), g, k), 1e-12);
  }
  EXPECT_NEAR(sobolev_seminorm(sine(g), g, 1), kTwoPi * std::sqrt(0.5), 1e-12);
  EXPECT_NEAR(sobolev_seminorm(sine(g), g, 2), kTwoPi * kTwoPi * std::sqrt(0.5),
              1e-10);
  EXPECT_THROW(sobolev_seminorm(sine(g), g, 5), Error);
}
