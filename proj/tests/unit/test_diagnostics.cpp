#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "dvflow/constitutive.hpp"
#include "dvflow/diagnostics.hpp"
#include "dvflow/spatial.hpp"
#include "oracle.hpp"

using namespace dvflow;
using oracle::kTwoPi;
using S = oracle::SmoothState;

namespace {

const ConstitutiveLaw kLaw = ConstitutiveLaw::make(1.0, 2.0, 1.0, 1.0);

FluidState uniform(int n, double rho) {
  return {0.0, Field(static_cast<std::size_t>(n), rho), Field(static_cast<std::size_t>(n), 0.0)};
}

RunOutcome short_run(const FluidState& s0, const ConstitutiveLaw& law, const Grid& g,
                     const ForcingSpec& f, double T, double cadence) {
  StepControl c;
  c.end_time = T;
  RunOptions o;
  o.cadence = cadence;
  return run(s0, law, g, f, c, o);
}

}  // namespace

TEST(Record, EquilibriumValues) {
  const Grid g(32);
  const DiagnosticsRecord r = record(uniform(32, 1.0), kLaw, g, {}, 0.0);
  EXPECT_DOUBLE_EQ(r.energy, pi_potential(1.0, kLaw));
  EXPECT_DOUBLE_EQ(r.entropy, pi_potential(1.0, kLaw));
  EXPECT_EQ(r.dissipation_energy, 0.0);
  EXPECT_EQ(r.dissipation_entropy, 0.0);
  EXPECT_DOUBLE_EQ(r.max_w, -1.0);
  EXPECT_DOUBLE_EQ(r.min_w, -1.0);
  EXPECT_FALSE(r.density_floor_bound.has_value());
}

TEST(Record, SmoothStateMatchesClosedFormIntegrals) {
  const double k = kTwoPi;
  const Grid g(128);
  const DiagnosticsRecord r = record(S::state(g), kLaw, g, {}, 0.0);
  EXPECT_NEAR(r.mass, 2.0, 1e-12);
  EXPECT_NEAR(r.energy, 5.0, 1e-10);
  EXPECT_NEAR(r.entropy, 4.5 + 0.5 * (1.0 + k + k * k * (2.0 - std::sqrt(3.0))), 1e-10);
  // mu u_x^2 = (2 + s) k^2 s^2 and mu p' rho_x^2 / rho^2 = 2 k^2 c^2.
  EXPECT_NEAR(r.dissipation_energy, k * k, 1e-10);
  EXPECT_NEAR(r.dissipation_entropy, k * k, 1e-10);
  EXPECT_EQ(r.power_in_energy, 0.0);
  // w = -(2 + s)(2 + (1 + k) s).
  const double q = 1.0 + k;
  const double w2 = 16.0 + 2.0 * q * q + 8.0 * q + 2.0 + 0.375 * q * q;
  EXPECT_NEAR(r.l2_w, std::sqrt(w2), 1e-10);
  EXPECT_NEAR(r.hk_rho[0], k / std::sqrt(2.0), 1e-10);
  EXPECT_NEAR(r.hk_u[1], k * k / std::sqrt(2.0), 1e-9);
  EXPECT_DOUBLE_EQ(r.min_rho, 1.0);
  EXPECT_DOUBLE_EQ(r.max_rho, 3.0);
  EXPECT_DOUBLE_EQ(r.x_min_rho, 0.75);
  // m = (alpha + gamma - 1)/2 = 1: ||rho_x||^2 = k^2 / 2.
  EXPECT_NEAR(r.grad_rho_m_sq, k * k / 2.0, 1e-10);
}

TEST(Record, EntropyDissipationIsSignedByPressure) {
  const Grid g(64);
  const auto law = ConstitutiveLaw::make(-1.0, 0.5, 3.0, 1.0);
  const DiagnosticsRecord r = record(S::state(g), law, g, {}, 0.0);
  EXPECT_LT(r.dissipation_entropy, 0.0);
  EXPECT_GT(r.dissipation_energy, 0.0);
}

TEST(BalanceResidual, EquilibriumIsZero) {
  const Grid g(32);
  const auto out = short_run(uniform(32, 1.0), kLaw, g, {}, 0.1, 0.0);
  for (std::size_t i = 1; i < out.records.size(); ++i) {
    for (Balance b : {Balance::mass, Balance::energy, Balance::entropy, Balance::w_l2}) {
      EXPECT_LT(std::abs(balance_residual(out.records[i - 1], out.records[i], b)), 1e-14);
    }
  }
}

TEST(BalanceResidual, MassResidualPerStepIsRoundOff) {
  const Grid g(64);
  FluidState s0 = S::state(g);
  const auto law = preset_to_law(ModelPreset::shallow_water(2.0, 0.05)).law;
  const auto out = short_run(s0, law, g, {}, 0.05, 0.0);
  ASSERT_GT(out.records.size(), 10u);
  for (std::size_t i = 1; i < out.records.size(); ++i) {
    EXPECT_LE(std::abs(balance_residual(out.records[i - 1], out.records[i], Balance::mass)),
              1e-12);
  }
}

TEST(BalanceResidual, RejectsRecordsFromDifferentRuns) {
  DiagnosticsRecord a, b;
  a.run_id = 1;
  b.run_id = 2;
  EXPECT_THROW(balance_residual(a, b, Balance::energy), Error);
}

TEST(BalanceRate, WL2RateMatchesTimeDerivative) {
  // d/dt (1/2)||w||^2 = int w w_t, with w_t from the active-potential equation.
  const Grid g(128);
  const auto law = ConstitutiveLaw::make(1.0, 2.5, 0.7, 1.5);
  const FluidState s = S::state(g);
  const DiagnosticsRecord r = record(s, law, g, {}, 0.0);
  const Field w = active_potential(s, law, g);
  const Field wt = w_rhs(s, law, g, {}, 0.0);
  Field prod(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) prod[i] = w[i] * wt[i];
  EXPECT_NEAR(balance_rate(r, Balance::w_l2), integrate(prod, g),
              1e-9 * std::abs(integrate(prod, g)));
}

TEST(WEquationResidual, ZeroAtEquilibrium) {
  const Grid g(32);
  EXPECT_LT(w_equation_residual(uniform(32, 1.0), kLaw, g, {}, 0.0, 1e-4), 1e-12);
}

TEST(WEquationResidual, IsFirstOrderInProbeStep) {
  const Grid g(128);
  const double r1 = w_equation_residual(S::state(g), kLaw, g, {}, 0.0, 2e-5);
  const double r2 = w_equation_residual(S::state(g), kLaw, g, {}, 0.0, 1e-5);
  EXPECT_NEAR(r1 / r2, 2.0, 0.2);
}

TEST(WEquationResidual, SpatialPartIsResolved) {
  // Compare the defect on the nodes the two grids share; what is left is the
  // round-off floor of the n = 256 evaluation.
  const Grid coarse(128), fine(256);
  const Field a = w_equation_defect(S::state(coarse), kLaw, coarse, {}, 0.0, 1e-5);
  const Field b = w_equation_defect(S::state(fine), kLaw, fine, {}, 0.0, 1e-5);
  double diff = 0.0, size = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff = std::max(diff, std::abs(a[i] - b[2 * i + 1]));
    size = std::max(size, std::abs(a[i]));
  }
  EXPECT_GT(size, 0.1);
  EXPECT_LT(diff, 1e-6);
}

TEST(MaxPrinciple, EquilibriumIsOkWithWorstMinusCp) {
  const Grid g(32);
  const auto law = ConstitutiveLaw::make(2.0, 1.5, 1.0, 1.0);
  const FluidState s0 = uniform(32, 1.0);
  const auto out = short_run(s0, law, g, {}, 0.1, 0.01);
  const auto res = max_principle_monitor(out.records, assess_scenario(s0, law, g, {}));
  EXPECT_TRUE(res.applicable);
  EXPECT_TRUE(res.ok);
  EXPECT_DOUBLE_EQ(res.worst, -2.0);
  EXPECT_FALSE(res.first_violation_t.has_value());
}

TEST(MaxPrinciple, NotApplicableWhenInitialDataViolatesThreshold) {
  const Grid g(32);
  const auto law = ConstitutiveLaw::make(1.0, 1.5, 1.0, 1.0);
  const FluidState s0{0.0, Field(32, 1.0), oracle::sample([](double x) {
                        return 0.5 * std::sin(kTwoPi * x);
                      }, g)};
  const ScenarioInfo info = assess_scenario(s0, law, g, {});
  EXPECT_FALSE(info.initial_condition.ok);
  EXPECT_FALSE(info.max_principle_applicable);
  const auto res = max_principle_monitor(std::vector<DiagnosticsRecord>{}, info);
  EXPECT_FALSE(res.applicable);
  EXPECT_FALSE(res.ok);
}

TEST(MaxPrinciple, FlagsFirstViolation) {
  const Grid g(32);
  const auto law = ConstitutiveLaw::make(1.0, 1.5, 1.0, 1.0);
  const FluidState s0 = uniform(32, 1.0);
  std::vector<DiagnosticsRecord> recs(3);
  for (int i = 0; i < 3; ++i) {
    recs[i].t = i;
    recs[i].max_w = i == 0 ? -1.0 : 0.1 * i;
  }
  const auto res = max_principle_monitor(recs, assess_scenario(s0, law, g, {}));
  EXPECT_FALSE(res.ok);
  ASSERT_TRUE(res.first_violation_t.has_value());
  EXPECT_EQ(*res.first_violation_t, 1.0);
  EXPECT_DOUBLE_EQ(res.worst, 0.2);
}

TEST(DensityFloor, Examples) {
  EXPECT_DOUBLE_EQ(density_floor(1.0, 1.0, kLaw), 0.5);
  const auto equal = ConstitutiveLaw::make(1.0, 1.5, 1.0, 1.5);
  EXPECT_NEAR(density_floor(1.0, 1.0, equal), 0.36787944117144233, 1e-15);
  EXPECT_DOUBLE_EQ(density_floor(0.0, 0.7, kLaw), 0.7);
  EXPECT_DOUBLE_EQ(density_floor(0.0, 0.7, equal), 0.7);
  EXPECT_THROW(density_floor(1.0, 1.0, ConstitutiveLaw::make(1, 1.5, 1, 2)), Error);
}

TEST(DensityFloor, NonIncreasingAndBelowStart) {
  for (const auto& law : {kLaw, ConstitutiveLaw::make(1.0, 1.5, 1.0, 1.5),
                          ConstitutiveLaw::make(2.0, 2.5, 0.5, 1.0)}) {
    double prev = 0.8;
    for (double t = 0.0; t < 10.0; t += 0.37) {
      const double f = density_floor(t, 0.8, law);
      EXPECT_LE(f, prev);
      EXPECT_LE(f, 0.8);
      prev = f;
    }
  }
}

TEST(SupInterpolation, ConstantInputs) {
  const Grid g(64);
  for (double m : {0.5, 1.0, 2.0}) {
    const auto one = sup_interpolation_check(Field(64, 1.0), m, g);
    EXPECT_DOUBLE_EQ(one.lhs, 1.0);
    EXPECT_NEAR(one.rhs, 4.0, 1e-12);
    EXPECT_TRUE(one.ok);
    const auto c = sup_interpolation_check(Field(64, 3.5), m, g);
    EXPECT_DOUBLE_EQ(c.lhs, 3.5);
    EXPECT_NEAR(c.rhs, 14.0, 1e-12);
    EXPECT_TRUE(c.ok);
  }
}

TEST(SupInterpolation, HoldsForRandomPositiveTrigPolynomials) {
  const int n = 128;
  const Grid g(n);
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> degree(1, n / 4);
  std::normal_distribution<double> coef;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int ok = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int d = degree(rng);
    std::vector<double> a(d + 1), b(d + 1);
    for (int k = 1; k <= d; ++k) {
      a[k] = coef(rng) / k;
      b[k] = coef(rng) / k;
    }
    Field h(n);
    for (int i = 0; i < n; ++i) {
      double v = 0.0;
      for (int k = 1; k <= d; ++k) {
        v += a[k] * std::cos(kTwoPi * k * g.x(i)) + b[k] * std::sin(kTwoPi * k * g.x(i));
      }
      h[i] = v;
    }
    const auto [lo, hi] = std::minmax_element(h.begin(), h.end());
    const double low = 0.05 + unit(rng), high = low + 0.1 + 10.0 * unit(rng);
    const double l0 = *lo, h0 = *hi;
    for (double& v : h) v = low + (v - l0) / (h0 - l0) * (high - low);
    for (double m : {0.5, 1.0, 1.5, 2.0}) ok += sup_interpolation_check(h, m, g).ok;
  }
  EXPECT_EQ(ok, 4000);
}

TEST(ChainCheck, ConstantDensityRun) {
  const Grid g(32);
  const auto law = preset_to_law(ModelPreset::shallow_water(2.0, 0.05)).law;
  const FluidState s0 = uniform(32, 1.5);
  const ForcingSpec f = ForcingSpec::gradient({{1, 0.0}});
  const auto out = short_run(s0, law, g, f, 1.0, 0.05);
  const ChainCheck c = thm14_chain_check(out.records, law, assess_scenario(s0, law, g, f));
  EXPECT_TRUE(c.applicable);
  EXPECT_TRUE(c.ok);
  EXPECT_NEAR(c.lhs, 1.5, 1e-12);
  EXPECT_NEAR(c.rhs, 2.0 + 6.0, 1e-12);
  EXPECT_NEAR(c.time_average, 1.5, 1e-12);
}

TEST(ChainCheck, NotApplicableOutsideRegime) {
  const Grid g(32);
  const auto law = ConstitutiveLaw::make(1.0, 3.5, 1.0, 1.0);  // gamma > alpha + 1
  const FluidState s0 = uniform(32, 1.0);
  const auto out = short_run(s0, law, g, {}, 0.1, 0.05);
  const ChainCheck c = thm14_chain_check(out.records, law, assess_scenario(s0, law, g, {}));
  EXPECT_FALSE(c.applicable);
  EXPECT_FALSE(c.ok);
}

TEST(Manufactured, SteadyEquilibriumHasZeroError) {
  const Grid g(32);
  const Manufactured m{{1.3, {}}, {0.0, {}}};
  StepControl c;
  c.end_time = 0.2;
  const MmsError e = mms_run(m, kLaw, g, c);
  EXPECT_EQ(e.status, RunStatus::completed);
  EXPECT_LT(e.error, 1e-14);
}

TEST(Manufactured, FitOrderRecoversExactPowerLaw) {
  const std::vector<double> h = {0.1, 0.05, 0.025};
  std::vector<double> e;
  for (double v : h) e.push_back(3.0 * std::pow(v, 4));
  EXPECT_NEAR(fit_order(h, e), 4.0, 1e-12);
}

TEST(Manufactured, TemporalLadderIsFourthOrder) {
  const Manufactured m{
      {1.0, {{1, 0.2, 0.0, Envelope::sine, kTwoPi}}},
      {0.0, {{1, 0.3, -M_PI / 2, Envelope::decay, 1.0}}}};
  const auto law = ConstitutiveLaw::make(1.0, 2.0, 1e-3, 1.0);
  const std::vector<double> dts = {4e-3, 2e-3, 1e-3};
  const Convergence c = mms_temporal(m, law, Grid(32), dts, 0.4);
  EXPECT_NEAR(c.order, 4.0, 0.25);
}
