#pragma once

// Functionals of the flow state, balance residuals, the maximum-principle and
// density-floor monitors, the time-averaged maximum-density chain, and the
// manufactured-solution convergence harness.

#include <optional>
#include <span>
#include <vector>

#include "dvflow/constitutive.hpp"
#include "dvflow/fourier.hpp"
#include "dvflow/integrator.hpp"
#include "dvflow/types.hpp"

namespace dvflow {

/// Only the fields that enter the balances: mass, energy, entropy, l2_w,
/// dissipation_*, power_in_*, w_l2_rhs.
DiagnosticsRecord balance_sample(const FluidState& state,
                                 const ConstitutiveLaw& law, const Grid& grid,
                                 const ForcingSpec& forcing, double t);

/// Initial data of the closed-form density floor.
struct FloorReference {
  double rho_m0 = 0.0;
  double t0 = 0.0;
};

/// Every field.  `floor` is set when the run qualifies for the closed-form
/// density floor.
DiagnosticsRecord record(const FluidState& state, const ConstitutiveLaw& law,
                         const Grid& grid, const ForcingSpec& forcing,
                         double t,
                         std::optional<FloorReference> floor = std::nullopt);

enum class Balance { mass, energy, entropy, w_l2 };

const char* to_string(Balance which);

/// Right side of d/dt F for the balanced functional F.
double balance_rate(const DiagnosticsRecord& r, Balance which);
/// F itself: mass, energy, entropy or ||w||^2 / 2.
double balance_functional(const DiagnosticsRecord& r, Balance which);

/// [F(b) - F(a)] - (t_b - t_a)/2 [R(a) + R(b)].
double balance_residual(const DiagnosticsRecord& a, const DiagnosticsRecord& b,
                        Balance which);

/// Pointwise (w(step(state, dt_probe)) - w(state))/dt_probe - w_rhs(state).
/// The difference w(step) - w(state) is assembled from the RK4 increment so
/// that it carries round-off relative to the increment, not to w.
Field w_equation_defect(const FluidState& state, const ConstitutiveLaw& law,
                        const Grid& grid, const ForcingSpec& forcing, double t,
                        double dt_probe);

/// Max-norm of w_equation_defect.
double w_equation_residual(const FluidState& state, const ConstitutiveLaw& law,
                           const Grid& grid, const ForcingSpec& forcing,
                           double t, double dt_probe);

// ---------------------------------------------------------------------------

/// Which monitors a run qualifies for.
struct ScenarioInfo {
  RegimeReport regime;
  ForcingKind forcing_kind = ForcingKind::none;
  InitialConditionCheck initial_condition;
  double initial_min_rho = 0.0;
  double initial_mass = 0.0;
  /// Law in the maximum-principle regime, forcing independent of x and the
  /// initial data below the w <= 0 threshold.
  bool max_principle_applicable = false;
  /// Law in the time-averaged bound regime with gradient forcing.
  bool long_time_bound_applicable = false;
};

ScenarioInfo assess_scenario(const FluidState& initial,
                             const ConstitutiveLaw& law, const Grid& grid,
                             const ForcingSpec& forcing);

struct MaxPrincipleResult {
  bool applicable = false;
  bool ok = false;
  double worst = 0.0;
  std::optional<double> first_violation_t;
};

inline constexpr double kMaxPrincipleTolerance = 1e-8;

MaxPrincipleResult max_principle_monitor(
    std::span<const DiagnosticsRecord> records, const ScenarioInfo& scenario,
    double tolerance = kMaxPrincipleTolerance);

/// Lower bound on min rho(t):
///   gamma > alpha: (rho_m0^(alpha-gamma) + t (c_p/c_mu)(gamma-alpha))^(1/(alpha-gamma))
///   gamma = alpha: rho_m0 exp(-t c_p/c_mu)
double density_floor(double t, double rho_m0, const ConstitutiveLaw& law);

struct DensityFloorResult {
  bool applicable = false;
  bool ok = false;
  /// min over records of (min_rho - bound).
  double worst_margin = 0.0;
};

DensityFloorResult density_floor_monitor(
    std::span<const DiagnosticsRecord> records, double tolerance = 1e-8);

struct InterpolationCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool ok = false;
};

/// ||h||_inf <= 2 ||(h^m)_x||_1^(1/m) + 4 ||h||_1 for positive h, m >= 1/2.
InterpolationCheck sup_interpolation_check(std::span<const double> h,
                                           double m, const Grid& grid);

struct ChainCheck {
  bool applicable = false;
  double exponent = 0.0;
  /// int_0^T ||rho||_inf dt.
  double lhs = 0.0;
  /// 2 int_0^T ||(rho^m)_x||_2^(1/m) dt + 4 T ||rho_0||_1.
  double middle = 0.0;
  /// 2 int_0^T (||(rho^m)_x||_2^2 + 1) dt + 4 T ||rho_0||_1.
  double rhs = 0.0;
  double horizon = 0.0;
  double time_average = 0.0;
  bool ok = false;
};

/// Time-trapezoid check of the averaged max-density chain.  Records must
/// carry max_rho and grad_rho_m_sq.
ChainCheck thm14_chain_check(std::span<const DiagnosticsRecord> records,
                             const ConstitutiveLaw& law,
                             const ScenarioInfo& scenario);

// ---------------------------------------------------------------------------
// Manufactured solutions

struct Manufactured {
  TrigSeries rho;
  TrigSeries u;
};

/// Source terms making (rho*, u*) an exact solution of the unforced system.
SourceFn manufactured_source(const Manufactured& m, const ConstitutiveLaw& law,
                             const Grid& grid);

struct MmsError {
  double error = 0.0;  // max-norm over rho and u at end time
  std::size_t steps = 0;
  RunStatus status = RunStatus::completed;
};

MmsError mms_run(const Manufactured& m, const ConstitutiveLaw& law,
                 const Grid& grid, const StepControl& control);

struct Convergence {
  std::vector<double> h;
  std::vector<double> errors;
  double order = 0.0;
};

/// Least-squares slope of log(error) against log(h).
double fit_order(std::span<const double> h, std::span<const double> errors);

/// Fixed-step ladder at one resolution; h = end_time / steps.
Convergence mms_temporal(const Manufactured& m, const ConstitutiveLaw& law,
                         const Grid& grid, std::span<const double> dts,
                         double end_time);

/// Resolution ladder at a fixed small step; h = 1/n.
Convergence mms_spatial(const Manufactured& m, const ConstitutiveLaw& law,
                        std::span<const int> ns, Scheme scheme, double dt,
                        double end_time);

}  // namespace dvflow
