#pragma once

// Property and acceptance checks over the solver library.  Each check runs a
// fixed scenario, compares against a pinned tolerance and reports the
// measured quantities next to the verdict.

#include <cstdint>
#include <string>
#include <vector>

#include "dvflow/constitutive.hpp"
#include "dvflow/diagnostics.hpp"
#include "dvflow/integrator.hpp"

namespace dvflow::verify {

struct Metric {
  std::string name;
  double value = 0.0;
};

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  std::vector<Metric> metrics;
  double seconds = 0.0;
};

/// Deliberate defects injected into the evaluation of a check, used to show
/// the checks are not vacuous.
struct Mutations {
  /// Evaluate the w equation with the sign of its quadratic term flipped.
  bool flip_w_quadratic = false;
  /// Evaluate the entropy balance with the dissipation sign flipped.
  bool flip_entropy_dissipation = false;
};

struct SuiteOptions {
  std::uint64_t seed = 20240601;
  int jobs = 1;
  /// Check ids to run; empty runs all of 1..12.
  std::vector<int> only;
};

// --- scenarios --------------------------------------------------------------

/// Shallow-water run shared by the conservation and balance checks:
/// gravity 2, viscosity 0.05, rho0 = 1 + 0.3 cos 2 pi x, u0 = 0.2 sin 2 pi x.
struct BalanceScenario {
  ConstitutiveLaw law;
  FluidState initial;
  double end_time = 1.0;
  int n = 128;
};
BalanceScenario balance_scenario();

/// One member of the fixed-dt ladder: balance samples after every step.
struct LadderRun {
  double dt = 0.0;
  RunStatus status = RunStatus::completed;
  std::vector<DiagnosticsRecord> samples;
  double seconds = 0.0;
};
LadderRun run_ladder_member(const BalanceScenario& scenario, double dt);

/// Base step of the ladder; members use dt, dt/2, dt/4.
inline constexpr double kLadderBaseDt = 1.0 / 16000.0;

/// Sum over steps of |balance defect|, divided by the elapsed time.
double residual_per_unit_time(const std::vector<DiagnosticsRecord>& samples,
                              Balance which, const Mutations& mutations = {});

/// Total positive variation of the entropy functional across samples.
double entropy_increase(const std::vector<DiagnosticsRecord>& samples);

// --- checks -------------------------------------------------------------------

CheckResult check_mass(const std::vector<LadderRun>& ladder);
CheckResult check_energy_balance(const std::vector<LadderRun>& ladder);
CheckResult check_entropy_balance(const std::vector<LadderRun>& ladder,
                                  const Mutations& mutations = {});
CheckResult check_w_equation(const Mutations& mutations = {});
CheckResult check_max_principle();
CheckResult check_sup_interpolation(std::uint64_t seed);
CheckResult check_long_time_chain();
CheckResult check_jet_mapping();
CheckResult check_mms_convergence();
CheckResult check_vacuum_detection();
CheckResult check_regime_table();
/// Passes when both mutated evaluations fail.
CheckResult check_mutation_sensitivity(const std::vector<LadderRun>& ladder);

std::vector<CheckResult> run_suite(const SuiteOptions& options);

// --- independent predicate ---------------------------------------------------

/// Regime truth table coded directly from the parameter conditions, sharing
/// no code with classify_regime.  Order matches the Theorem enum.
std::vector<bool> reference_regime(double c_p, double gamma, double c_mu,
                                   double alpha);

}  // namespace dvflow::verify
