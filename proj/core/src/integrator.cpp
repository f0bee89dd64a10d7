#include "dvflow/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dvflow/constitutive.hpp"
#include "dvflow/diagnostics.hpp"
#include "dvflow/spatial.hpp"

namespace dvflow {

StepControl validate_control(const StepControl& c) {
  auto fail = [](const std::string& msg) {
    throw Error(ErrorCode::invalid_argument, msg);
  };
  if (!(c.cfl_adv > 0.0 && c.cfl_adv <= 1.0)) fail("cfl_adv must be in (0, 1]");
  if (!(c.cfl_diff > 0.0 && c.cfl_diff <= 1.0)) fail("cfl_diff must be in (0, 1]");
  if (!(c.dt_min > 0.0)) fail("dt_min must be positive");
  if (!(c.dt_min <= c.dt_max)) fail("dt_min must not exceed dt_max");
  if (!(c.vacuum_floor_fraction > 0.0 && c.vacuum_floor_fraction < 1.0)) {
    fail("vacuum_floor_fraction must be in (0, 1)");
  }
  if (!(c.end_time >= 0.0) || !std::isfinite(c.end_time)) {
    fail("end_time must be finite and non-negative");
  }
  return c;
}

const char* to_string(RunStatus status) {
  switch (status) {
    case RunStatus::completed: return "completed";
    case RunStatus::vacuum_approach: return "vacuum_approach";
    case RunStatus::nonfinite: return "nonfinite";
    case RunStatus::dt_underflow: return "dt_underflow";
  }
  return "completed";
}

namespace {

FluidState axpy(const FluidState& s, double a, const Rates& k) {
  FluidState out{s.t, s.rho, s.u};
  for (std::size_t j = 0; j < out.rho.size(); ++j) {
    out.rho[j] += a * k.drho[j];
    out.u[j] += a * k.du[j];
  }
  return out;
}

}  // namespace

Rates rk4_increment(const FluidState& state, double dt, const RateFn& rates) {
  const double t = state.t;
  FluidState stage = state;
  const Rates k1 = rates(stage, t);
  stage = axpy(state, 0.5 * dt, k1);
  stage.t = t + 0.5 * dt;
  const Rates k2 = rates(stage, stage.t);
  stage = axpy(state, 0.5 * dt, k2);
  stage.t = t + 0.5 * dt;
  const Rates k3 = rates(stage, stage.t);
  stage = axpy(state, dt, k3);
  stage.t = t + dt;
  const Rates k4 = rates(stage, stage.t);

  Rates inc{Field(state.rho.size()), Field(state.u.size())};
  const double w = dt / 6.0;
  for (std::size_t j = 0; j < inc.drho.size(); ++j) {
    inc.drho[j] = w * (k1.drho[j] + 2.0 * k2.drho[j] + 2.0 * k3.drho[j] +
                       k4.drho[j]);
    inc.du[j] = w * (k1.du[j] + 2.0 * k2.du[j] + 2.0 * k3.du[j] + k4.du[j]);
  }
  return inc;
}

FluidState rk4_step(const FluidState& state, double dt, const RateFn& rates) {
  const Rates inc = rk4_increment(state, dt, rates);
  FluidState out{state.t + dt, state.rho, state.u};
  for (std::size_t j = 0; j < out.rho.size(); ++j) {
    out.rho[j] += inc.drho[j];
    out.u[j] += inc.du[j];
  }
  return out;
}

FluidState step(const FluidState& state, const ConstitutiveLaw& law,
                const Grid& grid, const ForcingSpec& forcing, double dt,
                const SourceFn& source) {
  if (!(dt > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "step requires dt > 0");
  }
  auto rates = [&](const FluidState& s, double t) {
    Rates r = rhs(s, law, grid, forcing, t);
    if (source) source(t, r.drho, r.du);
    return r;
  };
  FluidState out = rk4_step(state, dt, rates);
  validate_state(out, grid);
  return out;
}

double select_dt(const FluidState& state, const ConstitutiveLaw& law,
                 const Grid& grid, const StepControl& control, double t_stop) {
  double wave = 0.0;
  double diffusivity = 0.0;
  for (std::size_t j = 0; j < state.rho.size(); ++j) {
    const double r = state.rho[j];
    const double cs = std::sqrt(std::abs(pressure_slope(r, law)));
    wave = std::max(wave, std::abs(state.u[j]) + cs);
    diffusivity = std::max(diffusivity, viscosity(r, law) / r);
  }
  const double dx = grid.dx();
  const double dt_adv =
      wave > 0.0 ? control.cfl_adv * dx / wave : kInfinity;
  const double dt_diff = diffusivity > 0.0
                             ? control.cfl_diff * dx * dx / diffusivity
                             : kInfinity;
  const double dt_stable = std::min(dt_adv, dt_diff);
  if (!(dt_stable >= control.dt_min)) {
    std::ostringstream os;
    os << "stable step " << dt_stable << " below dt_min " << control.dt_min;
    throw Error(ErrorCode::dt_underflow, os.str());
  }
  double dt = std::min(dt_stable, control.dt_max);
  const double remaining = t_stop - state.t;
  if (remaining <= dt * (1.0 + 1e-9)) dt = remaining;
  return dt;
}

RunOutcome run(const FluidState& initial, const ConstitutiveLaw& law,
               const Grid& grid, const ForcingSpec& forcing,
               const StepControl& control_in, const RunOptions& options) {
  validate_law(law);
  const StepControl control = validate_control(control_in);
  validate_state(initial, grid);

  RunOutcome out;
  const ScenarioInfo scenario = assess_scenario(initial, law, grid, forcing);
  std::optional<FloorReference> floor_rho_m0;
  if (scenario.max_principle_applicable) {
    floor_rho_m0 = FloorReference{scenario.initial_min_rho, initial.t};
  }
  out.vacuum_floor = control.vacuum_floor_fraction * scenario.initial_min_rho;

  const double t_end = initial.t + control.end_time;
  const double eps = 1e-12 * std::max(1.0, std::abs(t_end));

  std::vector<double> snaps = options.snapshot_times;
  std::sort(snaps.begin(), snaps.end());
  std::size_t next_snap = 0;

  FluidState state = initial;
  auto emit = [&](DiagnosticsRecord r) {
    r.run_id = options.run_id;
    out.records.push_back(r);
  };

  DiagnosticsRecord prev_sample;
  if (options.track_balances) {
    prev_sample = balance_sample(state, law, grid, forcing, state.t);
    prev_sample.run_id = options.run_id;
    if (options.on_balance_sample) options.on_balance_sample(prev_sample);
  }
  DiagnosticsRecord interval;  // residual accumulators since last record
  emit(record(state, law, grid, forcing, state.t, floor_rho_m0));

  auto take_snapshots = [&]() {
    while (next_snap < snaps.size() && snaps[next_snap] <= state.t + eps) {
      if (snaps[next_snap] >= initial.t - eps) out.snapshots.push_back(state);
      ++next_snap;
    }
  };
  take_snapshots();

  std::size_t record_index = 1;
  auto record_time = [&](std::size_t k) {
    return options.cadence > 0.0
               ? initial.t + static_cast<double>(k) * options.cadence
               : kInfinity;
  };
  double next_record = record_time(record_index);

  auto emit_current = [&]() {
    DiagnosticsRecord r = record(state, law, grid, forcing, state.t, floor_rho_m0);
    r.residual_mass = interval.residual_mass;
    r.residual_energy = interval.residual_energy;
    r.residual_entropy = interval.residual_entropy;
    r.residual_w_l2 = interval.residual_w_l2;
    interval = DiagnosticsRecord{};
    emit(r);
  };

  while (state.t < t_end - eps) {
    if (out.steps >= options.max_steps) {
      out.status = RunStatus::dt_underflow;
      out.message = "step budget exhausted";
      break;
    }
    double t_stop = t_end;
    if (options.cadence > 0.0) t_stop = std::min(t_stop, next_record);
    if (next_snap < snaps.size()) t_stop = std::min(t_stop, snaps[next_snap]);

    double dt = 0.0;
    try {
      dt = select_dt(state, law, grid, control, t_stop);
    } catch (const Error& e) {
      out.status = RunStatus::dt_underflow;
      out.message = e.what();
      break;
    }

    FluidState next;
    bool advanced = false;
    while (!advanced) {
      try {
        next = step(state, law, grid, forcing, dt, options.source);
        advanced = true;
      } catch (const Error& e) {
        if (e.code() == ErrorCode::non_finite) {
          out.status = RunStatus::nonfinite;
          out.message = e.what();
          break;
        }
        if (e.code() != ErrorCode::non_positive_density) throw;
        // A stage left the positive cone; retry with a shorter step.
        dt *= 0.5;
        if (dt < control.dt_min) {
          out.status = RunStatus::dt_underflow;
          out.message = std::string("positivity lost below dt_min: ") + e.what();
          break;
        }
      }
    }
    if (!advanced) break;
    if (std::abs(next.t - t_stop) <= eps) next.t = t_stop;
    ++out.steps;

    if (options.track_balances) {
      DiagnosticsRecord sample = balance_sample(next, law, grid, forcing, next.t);
      sample.run_id = options.run_id;
      if (options.on_balance_sample) options.on_balance_sample(sample);
      const double rm = balance_residual(prev_sample, sample, Balance::mass);
      const double re = balance_residual(prev_sample, sample, Balance::energy);
      const double rs = balance_residual(prev_sample, sample, Balance::entropy);
      const double rw = balance_residual(prev_sample, sample, Balance::w_l2);
      interval.residual_mass += rm;
      interval.residual_energy += re;
      interval.residual_entropy += rs;
      interval.residual_w_l2 += rw;
      auto& b = out.balances;
      b.mass += rm;
      b.energy += re;
      b.entropy += rs;
      b.w_l2 += rw;
      b.abs_mass += std::abs(rm);
      b.abs_energy += std::abs(re);
      b.abs_entropy += std::abs(rs);
      b.abs_w_l2 += std::abs(rw);
      prev_sample = sample;
    }
    state = std::move(next);

    const auto min_it = std::min_element(state.rho.begin(), state.rho.end());
    if (*min_it <= out.vacuum_floor) {
      emit_current();
      out.status = RunStatus::vacuum_approach;
      std::ostringstream os;
      os << "min rho " << *min_it << " <= floor " << out.vacuum_floor
         << " at t = " << state.t << ", x = "
         << grid.x(static_cast<std::size_t>(min_it - state.rho.begin()));
      out.message = os.str();
      break;
    }

    const bool at_end = state.t >= t_end - eps;
    if (options.cadence <= 0.0 || state.t >= next_record - eps || at_end) {
      emit_current();
      while (options.cadence > 0.0 && next_record <= state.t + eps) {
        next_record = record_time(++record_index);
      }
    }
    take_snapshots();
  }

  if (out.status != RunStatus::completed &&
      out.status != RunStatus::vacuum_approach &&
      out.records.back().t != state.t) {
    emit_current();
  }
  out.final_state = std::move(state);
  return out;
}

}  // namespace dvflow
