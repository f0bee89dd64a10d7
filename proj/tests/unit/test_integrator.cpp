#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "dvflow/constitutive.hpp"
#include "dvflow/diagnostics.hpp"
#include "dvflow/integrator.hpp"
#include "dvflow/spatial.hpp"
#include "oracle.hpp"

using namespace dvflow;
using oracle::kTwoPi;

namespace {

const ConstitutiveLaw kLaw = ConstitutiveLaw::make(1.0, 2.0, 1.0, 1.0);

FluidState acoustic_state(const Grid& g, double eps) {
  return {0.0,
          oracle::sample([eps](double x) { return 1.0 + eps * std::cos(kTwoPi * x); }, g),
          Field(static_cast<std::size_t>(g.n()), 0.0)};
}

FluidState advance(FluidState s, const ConstitutiveLaw& law, const Grid& g,
                   double dt, int steps) {
  for (int i = 0; i < steps; ++i) s = step(s, law, g, {}, dt);
  return s;
}

}  // namespace

TEST(Step, EquilibriumIsUnchanged) {
  const Grid g(32);
  const FluidState rest{0.25, Field(32, 1.0), Field(32, 0.0)};
  const FluidState next = step(rest, kLaw, g, {}, 0.01);
  EXPECT_EQ(next.rho, rest.rho);
  EXPECT_EQ(next.u, rest.u);
  EXPECT_DOUBLE_EQ(next.t, 0.26);
}

TEST(Step, AcousticModeOscillatesAtSoundSpeed) {
  const Grid g(16);
  const double eps = 1e-6;
  const auto law = ConstitutiveLaw::make(1.0, 2.0, 1e-8, 1.0);
  FluidState s = acoustic_state(g, eps);
  const Field basis =
      oracle::sample([](double x) { return std::cos(kTwoPi * x); }, g);
  auto amplitude = [&](const FluidState& st) {
    double a = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i) a += (st.rho[i] - 1.0) * basis[i];
    return 2.0 * a * g.dx();
  };
  const double dt = 1e-3;
  std::vector<double> crossings;
  double prev = amplitude(s);
  for (int i = 0; i < 2000; ++i) {
    s = step(s, law, g, {}, dt);
    const double cur = amplitude(s);
    if ((prev > 0.0) != (cur > 0.0)) {
      crossings.push_back(s.t - dt * cur / (cur - prev));
    }
    prev = cur;
  }
  ASSERT_GE(crossings.size(), 4u);
  const double omega = M_PI * static_cast<double>(crossings.size() - 1) /
                       (crossings.back() - crossings.front());
  const double expected = kTwoPi * std::sqrt(2.0);
  EXPECT_NEAR(omega / expected, 1.0, 0.01);
}

TEST(Step, GlobalErrorIsFourthOrderInTime) {
  const Grid g(16);
  const auto law = ConstitutiveLaw::make(1.0, 2.0, 1e-8, 1.0);
  const FluidState s0 = acoustic_state(g, 1e-6);
  const double T = 1.0;
  const FluidState ref = advance(s0, law, g, T / 800.0, 800);
  std::vector<double> h, err;
  for (int steps : {25, 50, 100, 200}) {
    const FluidState s = advance(s0, law, g, T / steps, steps);
    h.push_back(T / steps);
    err.push_back(std::max(oracle::max_abs_diff(s.rho, ref.rho),
                           oracle::max_abs_diff(s.u, ref.u)));
  }
  EXPECT_NEAR(fit_order(h, err), 4.0, 0.25);
}

TEST(Step, RejectsNonPositiveResult) {
  const Grid g(16);
  FluidState s{0.0, Field(16, 1.0), Field(16, 0.0)};
  for (std::size_t i = 0; i < 16; ++i) s.u[i] = 50.0 * std::sin(kTwoPi * g.x(i));
  EXPECT_THROW(step(s, kLaw, g, {}, 0.05), Error);
}

TEST(SelectDt, DiffusionLimitedExample) {
  const Grid g(64);
  const FluidState rest{0.0, Field(64, 1.0), Field(64, 0.0)};
  const double dt = select_dt(rest, kLaw, g, StepControl{});
  EXPECT_DOUBLE_EQ(dt, std::min(0.4 / 64.0 / std::sqrt(2.0), 0.25 / 4096.0));
  EXPECT_NEAR(dt, 6.1035e-5, 1e-9);
}

TEST(SelectDt, ClampsAndLandsOnStopTime) {
  const Grid g(64);
  const FluidState rest{0.0, Field(64, 1.0), Field(64, 0.0)};
  StepControl c;
  c.dt_max = 1e-5;
  EXPECT_DOUBLE_EQ(select_dt(rest, kLaw, g, c), 1e-5);
  EXPECT_DOUBLE_EQ(select_dt(rest, kLaw, g, StepControl{}, 2e-5), 2e-5);
}

TEST(SelectDt, LargeVelocityUnderflows) {
  const Grid g(64);
  FluidState s{0.0, Field(64, 1.0), Field(64, 1e13)};
  try {
    select_dt(s, kLaw, g, StepControl{});
    FAIL() << "expected dt_underflow";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::dt_underflow);
  }
}

TEST(ValidateControl, RejectsBadFields) {
  StepControl c;
  c.cfl_adv = 0.0;
  EXPECT_THROW(validate_control(c), Error);
  c = {};
  c.end_time = -1.0;
  EXPECT_THROW(validate_control(c), Error);
  c = {};
  c.vacuum_floor_fraction = 1.0;
  EXPECT_THROW(validate_control(c), Error);
}

TEST(Run, EquilibriumKeepsEveryColumnConstant) {
  const Grid g(32);
  const auto law = preset_to_law(ModelPreset::shallow_water(9.81, 1e-3)).law;
  StepControl c;
  c.end_time = 0.1;
  RunOptions o;
  o.cadence = 0.01;
  const RunOutcome out = run({0.0, Field(32, 1.0), Field(32, 0.0)}, law, g, {}, c, o);
  ASSERT_EQ(out.status, RunStatus::completed);
  ASSERT_GE(out.records.size(), 11u);
  EXPECT_DOUBLE_EQ(out.records.back().t, 0.1);
  const auto& first = out.records.front();
  for (const auto& r : out.records) {
    EXPECT_DOUBLE_EQ(r.mass, first.mass);
    EXPECT_DOUBLE_EQ(r.energy, first.energy);
    EXPECT_DOUBLE_EQ(r.entropy, first.entropy);
    EXPECT_DOUBLE_EQ(r.min_rho, 1.0);
    EXPECT_LT(std::abs(r.residual_energy), 1e-14);
    EXPECT_LT(std::abs(r.residual_entropy), 1e-14);
    EXPECT_LT(std::abs(r.residual_w_l2), 1e-14);
  }
}

TEST(Run, SnapshotsLandOnRequestedTimes) {
  const Grid g(32);
  StepControl c;
  c.end_time = 0.05;
  RunOptions o;
  o.snapshot_times = {0.0, 0.0123, 0.05};
  const RunOutcome out = run(acoustic_state(g, 0.1), kLaw, g, {}, c, o);
  ASSERT_EQ(out.snapshots.size(), 3u);
  EXPECT_DOUBLE_EQ(out.snapshots[1].t, 0.0123);
  EXPECT_DOUBLE_EQ(out.snapshots[2].t, 0.05);
}

TEST(Run, IsDeterministicAndConservesMass) {
  const Grid g(64);
  const auto law = preset_to_law(ModelPreset::shallow_water(2.0, 0.05)).law;
  FluidState s0 = acoustic_state(g, 0.3);
  for (std::size_t i = 0; i < s0.u.size(); ++i) s0.u[i] = 0.2 * std::sin(kTwoPi * g.x(i));
  StepControl c;
  c.end_time = 0.2;
  RunOptions o;
  o.cadence = 0.05;
  const RunOutcome a = run(s0, law, g, {}, c, o);
  const RunOutcome b = run(s0, law, g, {}, c, o);
  EXPECT_EQ(a.final_state, b.final_state);
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(a.records[i].energy, b.records[i].energy);
  }
  const double m0 = a.records.front().mass;
  EXPECT_LT(std::abs(a.records.back().mass - m0) / m0, 1e-11);
}

TEST(Run, PinchingJetApproachesVacuum) {
  const Grid g(128);
  const PresetMapping m = preset_to_law(ModelPreset::slender_jet(1.0, 0.01, 1.0));
  const Field h = oracle::sample(
      [](double x) { return 0.1 + 0.9 * (1.0 - std::cos(kTwoPi * x)) / 2.0; }, g);
  StepControl c;
  c.end_time = 5.0;
  c.vacuum_floor_fraction = 1e-2;
  RunOptions o;
  o.cadence = 1e-3;
  o.track_balances = false;
  const RunOutcome out =
      run({0.0, jet_transform(h, JetDirection::forward), Field(128, 0.0)}, m.law, g,
          ForcingSpec::time_only({{0, m.forcing_addend}}), c, o);
  EXPECT_EQ(out.status, RunStatus::vacuum_approach);
  EXPECT_LT(out.final_state.t, 5.0);
  EXPECT_FALSE(out.message.empty());
  EXPECT_LE(out.records.back().min_rho, out.vacuum_floor);
}

TEST(Run, MaxPrincipleScenarioStaysAboveFloor) {
  const Grid g(64);
  const auto law = ConstitutiveLaw::make(1.0, 1.5, 1.0, 1.0);
  const FluidState s0{
      0.0, oracle::sample([](double x) { return 1.0 + 0.3 * std::cos(kTwoPi * x); }, g),
      oracle::sample([](double x) { return 0.1 * std::sin(kTwoPi * x); }, g)};
  const ForcingSpec f = ForcingSpec::time_only({{0, 0.1, 0.0, Envelope::sine, 1.0}});
  StepControl c;
  c.end_time = 1.0;
  RunOptions o;
  o.cadence = 0.02;
  const RunOutcome out = run(s0, law, g, f, c, o);
  ASSERT_EQ(out.status, RunStatus::completed);
  for (const auto& r : out.records) {
    ASSERT_TRUE(r.density_floor_bound.has_value());
    EXPECT_GE(r.min_rho, *r.density_floor_bound - 1e-8);
    EXPECT_NEAR(*r.density_floor_bound, std::pow(std::pow(0.7, -0.5) + 0.5 * r.t, -2.0),
                1e-13);
  }
}
