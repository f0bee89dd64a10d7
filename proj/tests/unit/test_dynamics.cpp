#include <gtest/gtest.h>

#include <cmath>

#include "dvflow/constitutive.hpp"
#include "dvflow/dynamics.hpp"
#include "dvflow/fourier.hpp"
#include "dvflow/spatial.hpp"
#include "oracle.hpp"

using namespace dvflow;
using oracle::kTwoPi;
using S = oracle::SmoothState;

namespace {

const ConstitutiveLaw kLaw = ConstitutiveLaw::make(1.0, 2.0, 1.0, 1.0);

double max_abs(const Field& f) {
  double m = 0.0;
  for (double v : f) m = std::max(m, std::abs(v));
  return m;
}

// Closed-form right sides for alpha = 1, gamma = 2, c_p = c_mu = 1.
double rho_t(double x) { return -(S::rho_x(x) * S::u(x) + S::rho(x) * S::u_x(x)); }
double u_t(double x) {
  return -S::u(x) * S::u_x(x) + S::rho_x(x) * S::u_x(x) / S::rho(x) + S::u_xx(x) -
         2.0 * S::rho_x(x);
}

}  // namespace

TEST(Rhs, EquilibriumIsStationary) {
  const Grid g(32);
  const Rates r = rhs({0.0, Field(32, 1.0), Field(32, 0.0)}, kLaw, g, {}, 0.0);
  EXPECT_LT(max_abs(r.drho), 1e-14);
  EXPECT_LT(max_abs(r.du), 1e-14);
}

TEST(Rhs, UniformMotionIsStationary) {
  for (Scheme scheme : {Scheme::spectral, Scheme::fd4}) {
    const Grid g(32, scheme);
    const Rates r = rhs({0.0, Field(32, 1.7), Field(32, -0.4)}, kLaw, g, {}, 0.0);
    EXPECT_LT(max_abs(r.drho), 1e-13);
    EXPECT_LT(max_abs(r.du), 1e-13);
  }
}

TEST(Rhs, MatchesClosedFormOnSmoothState) {
  const Grid g(128);
  const Rates r = rhs(S::state(g), kLaw, g, {}, 0.0);
  EXPECT_LT(oracle::max_abs_diff(r.drho, oracle::sample(rho_t, g)), 1e-10);
  EXPECT_LT(oracle::max_abs_diff(r.du, oracle::sample(u_t, g)), 1e-10);
}

TEST(Rhs, DensityRateHasZeroMean) {
  for (Scheme scheme : {Scheme::spectral, Scheme::fd4}) {
    const Grid g(64, scheme);
    const Rates r = rhs(S::state(g), ConstitutiveLaw::make(2.0, 1.4, 0.3, 0.8), g,
                        {}, 0.0);
    EXPECT_LT(std::abs(integrate(r.drho, g)), 1e-13);
  }
}

TEST(Rhs, ConservativeMomentumFormAgrees) {
  const Grid g(128);
  const ForcingSpec forcing = ForcingSpec::general({{2, 0.3, 0.1}});
  for (const auto& law : {kLaw, ConstitutiveLaw::make(0.5, 1.5, 0.2, 1.5)}) {
    const Rates r = rhs(S::state(g), law, g, forcing, 0.3);
    const Field du = momentum_form_du(S::state(g), law, g, forcing, 0.3);
    EXPECT_LT(oracle::max_abs_diff(du, r.du), 1e-8);
  }
}

TEST(Rhs, AddsBodyForce) {
  const Grid g(32);
  const ForcingSpec forcing =
      ForcingSpec::time_only({{0, 0.5, 0.0, Envelope::sine, 2.0}});
  const Rates r = rhs({0.0, Field(32, 1.0), Field(32, 0.0)}, kLaw, g, forcing, 0.4);
  for (double v : r.du) EXPECT_NEAR(v, 0.5 * std::sin(0.8), 1e-15);
}

TEST(Forcing, GradientKindDifferentiatesThePotential) {
  const Grid g(32);
  const ForcingSpec spec = ForcingSpec::gradient({{1, 0.05, -M_PI / 2, Envelope::sine, 1.0}});
  const double t = 0.7;
  const Field f = forcing_field(spec, g, t);
  const Field fx = forcing_gradient(spec, g, t);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double x = g.x(i);
    // g = 0.05 sin(2 pi x) sin t
    EXPECT_NEAR(f[i], 0.05 * kTwoPi * std::cos(kTwoPi * x) * std::sin(t), 1e-14);
    EXPECT_NEAR(fx[i], -0.05 * kTwoPi * kTwoPi * std::sin(kTwoPi * x) * std::sin(t),
                1e-13);
  }
}

TEST(ActivePotential, Examples) {
  const Grid g(64);
  const Field rest = active_potential({0.0, Field(64, 1.0), Field(64, 0.0)}, kLaw, g);
  for (double v : rest) EXPECT_DOUBLE_EQ(v, -1.0);

  const FluidState s{0.0, Field(64, 1.0), oracle::sample([](double x) {
                       return std::sin(kTwoPi * x) / kTwoPi;
                     }, g)};
  const Field w = active_potential(s, ConstitutiveLaw::make(0.5, 1.7, 1.0, 1.3), g);
  EXPECT_LT(oracle::max_abs_diff(
                w, oracle::sample([](double x) { return -0.5 + std::cos(kTwoPi * x); }, g)),
            1e-13);

  const ConstitutiveLaw sw = preset_to_law(ModelPreset::shallow_water(2.0, 0.25)).law;
  for (double v : active_potential({0.0, Field(64, 1.0), Field(64, 0.0)}, sw, g)) {
    EXPECT_DOUBLE_EQ(v, -1.0);
  }
}

TEST(BdVelocity, Examples) {
  const Grid g(64);
  const Field u = oracle::sample([](double x) { return std::cos(3.0 * kTwoPi * x); }, g);
  EXPECT_EQ(bd_velocity({0.0, Field(64, 2.0), u}, kLaw, g), u);

  const Field cosine =
      oracle::sample([](double x) { return kTwoPi * std::cos(kTwoPi * x); }, g);
  const FluidState s2{0.0, oracle::sample(S::rho, g), Field(64, 0.0)};
  EXPECT_LT(oracle::max_abs_diff(
                bd_velocity(s2, ConstitutiveLaw::make(1, 2, 1, 2), g), cosine),
            1e-12);

  const Grid fine(128);
  const FluidState s3{
      0.0, oracle::sample([](double x) { return std::exp(std::sin(kTwoPi * x)); }, fine),
      Field(128, 0.0)};
  EXPECT_LT(oracle::max_abs_diff(bd_velocity(s3, kLaw, fine),
                                 oracle::sample([](double x) {
                                   return kTwoPi * std::cos(kTwoPi * x);
                                 }, fine)),
            1e-11);
}

TEST(EnergyEntropy, Examples) {
  const Grid g(32);
  const auto [e, s] = energy_entropy_densities({0.0, Field(32, 1.0), Field(32, 0.0)},
                                               kLaw, g);
  for (std::size_t i = 0; i < e.size(); ++i) {
    EXPECT_DOUBLE_EQ(e[i], 1.0);
    EXPECT_DOUBLE_EQ(s[i], 1.0);
  }
  const Field u = oracle::sample([](double x) { return std::sin(kTwoPi * x); }, g);
  const auto [e2, s2] = energy_entropy_densities({0.0, Field(32, 1.5), u}, kLaw, g);
  EXPECT_LT(oracle::max_abs_diff(e2, s2), 1e-15);
}

TEST(EnergyEntropy, IntegralsMatchClosedForm) {
  // int e = 1/2 + 9/2; int s = 9/2 + (1 + 2 pi + (2 pi)^2 (2 - sqrt 3)) / 2.
  const Grid g(128);
  const auto [e, s] = energy_entropy_densities(S::state(g), kLaw, g);
  EXPECT_NEAR(integrate(e, g), 5.0, 1e-12);
  const double expected_s =
      4.5 + 0.5 * (1.0 + kTwoPi + kTwoPi * kTwoPi * (2.0 - std::sqrt(3.0)));
  EXPECT_NEAR(integrate(s, g), expected_s, 1e-10);
}

TEST(WRhs, VanishesAtEquilibrium) {
  const Grid g(32);
  for (const auto& law : {kLaw, ConstitutiveLaw::make(1.0, 1.5, 1.0, 1.0),
                          ConstitutiveLaw::make(-1.0, 0.5, 3.0, 1.0)}) {
    const Field r = w_rhs({0.0, Field(32, 1.0), Field(32, 0.0)}, law, g, {}, 0.0);
    EXPECT_LT(max_abs(r), 1e-13);
  }
}

TEST(WRhs, SpatiallyUniformForceDropsOut) {
  const Grid g(64);
  const ForcingSpec f = ForcingSpec::time_only({{0, 0.7, 0.0, Envelope::sine, 1.0}});
  const Field with = w_rhs(S::state(g), kLaw, g, f, 0.5);
  const Field without = w_rhs(S::state(g), kLaw, g, {}, 0.5);
  EXPECT_EQ(with, without);
}

// w_t = -p' rho_t + mu' rho_t u_x + mu (u_t)_x with p' = 2 rho, mu = rho.
double chain_rule_w_t(double x) {
  return -2.0 * S::rho(x) * rho_t(x) + rho_t(x) * S::u_x(x) +
         S::rho(x) * oracle::d_dx(u_t, x);
}

TEST(WRhs, MatchesChainRuleOfTheFlow) {
  const Grid g(32);
  const Field got = w_rhs(S::state(g), kLaw, g, {}, 0.0);
  EXPECT_LT(oracle::max_abs_diff(got, oracle::sample(chain_rule_w_t, g)), 1e-9);
}

TEST(WRhs, ChainRuleDeviationAtFineGridIsRoundOff) {
  // w_xx carries a third derivative of u, so transform round-off grows like
  // eps (pi n)^3 max|w|; at n = 128 that is ~2e-8 against |w_t| ~ 900.
  const Grid g(128);
  const Field got = w_rhs(S::state(g), kLaw, g, {}, 0.0);
  const double floor = 2.2e-16 * std::pow(M_PI * g.n(), 3) * 30.0;
  EXPECT_LT(oracle::max_abs_diff(got, oracle::sample(chain_rule_w_t, g)), floor);
}

TEST(JetRhs, AgreesWithMappedSystemInstantaneously) {
  const Grid g(128);
  const double sigma = 1.0, nu = 0.1, gravity = 1.5;
  const Field h = oracle::sample(
      [](double x) { return 1.0 + 0.2 * std::cos(kTwoPi * x); }, g);
  const Field u = oracle::sample([](double x) { return 0.1 * std::sin(kTwoPi * x); }, g);
  const Rates jet = jet_rhs({0.0, h, u}, sigma, nu, gravity, g, {}, 0.0);

  const PresetMapping m = preset_to_law(ModelPreset::slender_jet(sigma, nu, gravity));
  const ForcingSpec addend = ForcingSpec::time_only({{0, m.forcing_addend}});
  const Rates mapped =
      rhs({0.0, jet_transform(h, JetDirection::forward), u}, m.law, g, addend, 0.0);
  for (std::size_t i = 0; i < h.size(); ++i) {
    EXPECT_NEAR(mapped.drho[i], 2.0 * h[i] * jet.drho[i], 1e-10);
    EXPECT_NEAR(mapped.du[i], jet.du[i], 1e-10);
  }
}

TEST(DerivedFields, BundleMatchesIndividualOperations) {
  const Grid g(64);
  const auto s = S::state(g);
  const DerivedFields d = derived_fields(s, kLaw, g);
  EXPECT_EQ(d.w, active_potential(s, kLaw, g));
  EXPECT_EQ(d.X, bd_velocity(s, kLaw, g));
  for (std::size_t i = 0; i < s.rho.size(); ++i) {
    EXPECT_DOUBLE_EQ(d.p[i], pressure(s.rho[i], kLaw));
    EXPECT_DOUBLE_EQ(d.mu[i], viscosity(s.rho[i], kLaw));
  }
}
