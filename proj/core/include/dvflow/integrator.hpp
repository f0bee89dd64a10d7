#pragma once

// Explicit RK4 time advancement with CFL/diffusion step control and vacuum
// detection.  A run is strictly sequential; independent runs share nothing
// and may execute on different threads.

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "dvflow/dynamics.hpp"
#include "dvflow/types.hpp"

namespace dvflow {

struct StepControl {
  double cfl_adv = 0.4;
  double cfl_diff = 0.25;
  double dt_min = 1e-12;
  double dt_max = 1.0;
  /// Vacuum floor as a fraction of the initial minimum density.
  double vacuum_floor_fraction = 1e-6;
  double end_time = 1.0;
};

/// Throws Error(invalid_argument) on out-of-range fields.
StepControl validate_control(const StepControl& control);

enum class RunStatus { completed, vacuum_approach, nonfinite, dt_underflow };

const char* to_string(RunStatus status);

/// Adds extra sources to (drho, du) at time t; used for manufactured
/// solutions.
using SourceFn =
    std::function<void(double t, std::span<double> drho, std::span<double> du)>;

/// Right side of a generic two-field system.
using RateFn = std::function<Rates(const FluidState& state, double t)>;

/// One classical RK4 step of `rates`; the result is not validated.
FluidState rk4_step(const FluidState& state, double dt, const RateFn& rates);

/// The classical RK4 increment (state after the step minus state), formed
/// without adding it to the state.
Rates rk4_increment(const FluidState& state, double dt, const RateFn& rates);

/// One RK4 step of the flow equations.  Output time is t + dt; the output is
/// validated (positivity, finiteness).
FluidState step(const FluidState& state, const ConstitutiveLaw& law,
                const Grid& grid, const ForcingSpec& forcing, double dt,
                const SourceFn& source = {});

/// Stable step:
///   dt_adv  = cfl_adv  dx   / max(|u| + sqrt(|p'(rho)|))
///   dt_diff = cfl_diff dx^2 / max(mu(rho)/rho)
/// clamped to dt_max and shortened to land on `t_stop`.  Throws
/// Error(dt_underflow) when min(dt_adv, dt_diff) < dt_min.
double select_dt(const FluidState& state, const ConstitutiveLaw& law,
                 const Grid& grid, const StepControl& control,
                 double t_stop = std::numeric_limits<double>::infinity());

struct RunOptions {
  /// Interval between emitted records; 0 records every step.
  double cadence = 0.0;
  std::vector<double> snapshot_times;
  /// Evaluate the balance functionals after every step and accumulate their
  /// time-integrated residuals into the records.
  bool track_balances = true;
  std::uint64_t run_id = 1;
  SourceFn source;
  std::size_t max_steps = 100'000'000;
  /// Receives every balance sample (initial state and after each step) when
  /// balances are tracked.
  std::function<void(const DiagnosticsRecord&)> on_balance_sample;
};

struct BalanceTotals {
  /// Sum of signed per-step residuals.
  double mass = 0.0;
  double energy = 0.0;
  double entropy = 0.0;
  double w_l2 = 0.0;
  /// Sum of per-step |residual|.
  double abs_mass = 0.0;
  double abs_energy = 0.0;
  double abs_entropy = 0.0;
  double abs_w_l2 = 0.0;
};

struct RunOutcome {
  RunStatus status = RunStatus::completed;
  FluidState final_state;
  std::vector<DiagnosticsRecord> records;
  std::vector<FluidState> snapshots;
  std::size_t steps = 0;
  double vacuum_floor = 0.0;
  BalanceTotals balances;
  /// Set for vacuum_approach / failures.
  std::string message;
};

RunOutcome run(const FluidState& initial, const ConstitutiveLaw& law,
               const Grid& grid, const ForcingSpec& forcing,
               const StepControl& control, const RunOptions& options = {});

}  // namespace dvflow
