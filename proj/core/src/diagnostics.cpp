#include "dvflow/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dvflow/dynamics.hpp"
#include "dvflow/integrator.hpp"
#include "dvflow/spatial.hpp"

namespace dvflow {

DiagnosticsRecord balance_sample(const FluidState& state,
                                 const ConstitutiveLaw& law, const Grid& grid,
                                 const ForcingSpec& forcing, double t) {
  validate_state(state, grid);
  const auto n = state.rho.size();
  const auto& rho = state.rho;
  const auto& u = state.u;
  const Field rho_x = deriv(rho, grid, 1);
  const Field u_x = deriv(u, grid, 1);
  const Field f = forcing_field(forcing, grid, t);
  const Field f_x = forcing_gradient(forcing, grid, t);

  const double a = law.alpha;
  const double g = law.gamma;
  const double cp = law.c_p;
  const double cm = law.c_mu;

  Field w(n);
  for (std::size_t j = 0; j < n; ++j) {
    w[j] = -cp * std::pow(rho[j], g) + cm * std::pow(rho[j], a) * u_x[j];
  }
  const Field w_x = deriv(w, grid, 1);

  const double linear = cp / cm * (g - 2.0 * (a + 1.0));
  const double cubic = (a + 1.0) / cm;
  const double source = cp * cp / cm * (g - (a + 1.0));

  double mass = 0, energy = 0, entropy = 0, w2 = 0;
  double diss_e = 0, diss_s = 0, pow_e = 0, pow_s = 0, w_rate = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const double r = rho[j];
    const double mu = cm * std::pow(r, a);
    const double pi = pi_potential(r, law);
    const double X = u[j] + cm * std::pow(r, a - 2.0) * rho_x[j];
    const double p_slope = cp * g * std::pow(r, g - 1.0);
    mass += r;
    energy += 0.5 * r * u[j] * u[j] + pi;
    entropy += 0.5 * r * X * X + pi;
    w2 += w[j] * w[j];
    diss_e += mu * u_x[j] * u_x[j];
    diss_s += rho_x[j] * rho_x[j] * mu * p_slope / (r * r);
    pow_e += f[j] * r * u[j];
    pow_s += f[j] * r * X;

    // d/dt (1/2) int w^2, with the drift integrated by parts:
    // (u + mu'(rho) rho_x / rho) w w_x.
    const double drift = u[j] + cm * a * std::pow(r, a - 2.0) * rho_x[j];
    w_rate += -(mu / r) * w_x[j] * w_x[j] - drift * w[j] * w_x[j] +
              linear * std::pow(r, g - a) * w[j] * w[j] -
              cubic * std::pow(r, -a) * w[j] * w[j] * w[j] +
              source * std::pow(r, 2.0 * g - a) * w[j] + mu * f_x[j] * w[j];
  }
  const double dx = grid.dx();
  DiagnosticsRecord out;
  out.t = t;
  out.mass = dx * mass;
  out.energy = dx * energy;
  out.entropy = dx * entropy;
  out.l2_w = std::sqrt(dx * w2);
  out.dissipation_energy = dx * diss_e;
  out.dissipation_entropy = dx * diss_s;
  out.power_in_energy = dx * pow_e;
  out.power_in_entropy = dx * pow_s;
  out.w_l2_rhs = dx * w_rate;
  return out;
}

DiagnosticsRecord record(const FluidState& state, const ConstitutiveLaw& law,
                         const Grid& grid, const ForcingSpec& forcing,
                         double t, std::optional<FloorReference> floor) {
  DiagnosticsRecord out = balance_sample(state, law, grid, forcing, t);
  const auto& rho = state.rho;
  const auto [lo, hi] = std::minmax_element(rho.begin(), rho.end());
  out.min_rho = *lo;
  out.max_rho = *hi;
  out.x_min_rho = grid.x(static_cast<std::size_t>(lo - rho.begin()));

  const Field w = active_potential(state, law, grid);
  const auto [wlo, whi] = std::minmax_element(w.begin(), w.end());
  out.min_w = *wlo;
  out.max_w = *whi;

  for (int k = 1; k <= 3; ++k) {
    out.hk_rho[static_cast<std::size_t>(k - 1)] = sobolev_seminorm(rho, grid, k);
    out.hk_u[static_cast<std::size_t>(k - 1)] = sobolev_seminorm(state.u, grid, k);
  }

  const double m = 0.5 * (law.alpha + law.gamma - 1.0);
  if (m > 0.0) {
    Field rho_m(rho.size());
    for (std::size_t j = 0; j < rho.size(); ++j) rho_m[j] = std::pow(rho[j], m);
    const double norm = lp_norm(deriv(rho_m, grid, 1), grid, 2.0);
    out.grad_rho_m_sq = norm * norm;
  }

  if (floor) {
    out.density_floor_bound = density_floor(t - floor->t0, floor->rho_m0, law);
  }
  return out;
}

const char* to_string(Balance which) {
  switch (which) {
    case Balance::mass: return "mass";
    case Balance::energy: return "energy";
    case Balance::entropy: return "entropy";
    case Balance::w_l2: return "w_l2";
  }
  return "mass";
}

double balance_functional(const DiagnosticsRecord& r, Balance which) {
  switch (which) {
    case Balance::mass: return r.mass;
    case Balance::energy: return r.energy;
    case Balance::entropy: return r.entropy;
    case Balance::w_l2: return 0.5 * r.l2_w * r.l2_w;
  }
  return 0.0;
}

double balance_rate(const DiagnosticsRecord& r, Balance which) {
  switch (which) {
    case Balance::mass: return 0.0;
    case Balance::energy: return -r.dissipation_energy + r.power_in_energy;
    case Balance::entropy: return -r.dissipation_entropy + r.power_in_entropy;
    case Balance::w_l2: return r.w_l2_rhs;
  }
  return 0.0;
}

double balance_residual(const DiagnosticsRecord& a, const DiagnosticsRecord& b,
                        Balance which) {
  if (a.run_id != b.run_id) {
    throw Error(ErrorCode::invalid_argument,
                "balance_residual: records come from different runs");
  }
  const double span = b.t - a.t;
  return (balance_functional(b, which) - balance_functional(a, which)) -
         0.5 * span * (balance_rate(a, which) + balance_rate(b, which));
}

Field w_equation_defect(const FluidState& state, const ConstitutiveLaw& law,
                        const Grid& grid, const ForcingSpec& forcing, double t,
                        double dt_probe) {
  if (!(dt_probe > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "dt_probe must be positive");
  }
  FluidState start = state;
  start.t = t;
  validate_state(start, grid);
  const Field rate = w_rhs(start, law, grid, forcing, t);
  const RateFn rates = [&](const FluidState& s, double time) {
    return rhs(s, law, grid, forcing, time);
  };
  const Rates inc = rk4_increment(start, dt_probe, rates);

  const Field u0_x = deriv(start.u, grid, 1);
  const Field du_x = deriv(inc.du, grid, 1);
  // rho1^q - rho0^q without cancellation.
  auto power_gap = [](double r0, double dr, double q) {
    return std::pow(r0, q) * std::expm1(q * std::log1p(dr / r0));
  };
  Field defect(start.rho.size());
  for (std::size_t j = 0; j < defect.size(); ++j) {
    const double r0 = start.rho[j];
    const double dr = inc.drho[j];
    const double r1 = r0 + dr;
    if (!(r1 > 0.0)) {
      throw Error(ErrorCode::non_positive_density,
                  "probe step left the positive cone", j);
    }
    const double dp = law.c_p * power_gap(r0, dr, law.gamma);
    const double dmu = law.c_mu * power_gap(r0, dr, law.alpha);
    const double mu1 = law.c_mu * std::pow(r1, law.alpha);
    const double dw = -dp + mu1 * du_x[j] + dmu * u0_x[j];
    defect[j] = dw / dt_probe - rate[j];
  }
  return defect;
}

double w_equation_residual(const FluidState& state, const ConstitutiveLaw& law,
                           const Grid& grid, const ForcingSpec& forcing,
                           double t, double dt_probe) {
  const Field d = w_equation_defect(state, law, grid, forcing, t, dt_probe);
  return lp_norm(d, grid, kInfinity);
}

ScenarioInfo assess_scenario(const FluidState& initial,
                             const ConstitutiveLaw& law, const Grid& grid,
                             const ForcingSpec& forcing) {
  ScenarioInfo info;
  info.regime = classify_regime(law);
  info.forcing_kind = forcing.kind;
  info.initial_condition = check_initial_condition_t13(initial, law, grid);
  info.initial_min_rho =
      *std::min_element(initial.rho.begin(), initial.rho.end());
  info.initial_mass = integrate(initial.rho, grid);
  const bool x_independent = forcing.kind == ForcingKind::none ||
                             forcing.kind == ForcingKind::time_only;
  const bool zero_mean = forcing.kind == ForcingKind::none ||
                         forcing.kind == ForcingKind::gradient;
  info.max_principle_applicable = info.regime.applies(Theorem::t13) &&
                                  x_independent && info.initial_condition.ok;
  info.long_time_bound_applicable =
      info.regime.applies(Theorem::t14) && zero_mean;
  return info;
}

MaxPrincipleResult max_principle_monitor(
    std::span<const DiagnosticsRecord> records, const ScenarioInfo& scenario,
    double tolerance) {
  MaxPrincipleResult out;
  out.applicable = scenario.max_principle_applicable;
  out.worst = -kInfinity;
  for (const auto& r : records) {
    out.worst = std::max(out.worst, r.max_w);
    if (r.max_w > tolerance && !out.first_violation_t) {
      out.first_violation_t = r.t;
    }
  }
  out.ok = out.applicable && !out.first_violation_t && !records.empty();
  return out;
}

double density_floor(double t, double rho_m0, const ConstitutiveLaw& law) {
  if (!(rho_m0 > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "density_floor requires rho_m0 > 0");
  }
  const double a = law.alpha;
  const double g = law.gamma;
  if (g < a) {
    throw Error(ErrorCode::invalid_argument,
                "density_floor requires gamma >= alpha");
  }
  const double ratio = law.c_p / law.c_mu;
  if (g == a) return rho_m0 * std::exp(-t * ratio);
  return std::pow(std::pow(rho_m0, a - g) + t * ratio * (g - a),
                  1.0 / (a - g));
}

DensityFloorResult density_floor_monitor(
    std::span<const DiagnosticsRecord> records, double tolerance) {
  DensityFloorResult out;
  out.applicable = !records.empty();
  out.worst_margin = kInfinity;
  for (const auto& r : records) {
    if (!r.density_floor_bound) {
      out.applicable = false;
      break;
    }
    out.worst_margin = std::min(out.worst_margin, r.min_rho - *r.density_floor_bound);
  }
  out.ok = out.applicable && out.worst_margin >= -tolerance;
  return out;
}

InterpolationCheck sup_interpolation_check(std::span<const double> h, double m,
                                           const Grid& grid) {
  if (!(m >= 0.5)) {
    throw Error(ErrorCode::invalid_argument,
                "sup_interpolation_check requires m >= 1/2");
  }
  Field hm(h.size());
  for (std::size_t j = 0; j < h.size(); ++j) {
    if (!(h[j] > 0.0)) {
      throw Error(ErrorCode::non_positive_density,
                  "sup_interpolation_check requires h > 0", j);
    }
    hm[j] = std::pow(h[j], m);
  }
  InterpolationCheck out;
  out.lhs = lp_norm(h, grid, kInfinity);
  const double grad = lp_norm(deriv(hm, grid, 1), grid, 1.0);
  out.rhs = 2.0 * std::pow(grad, 1.0 / m) + 4.0 * lp_norm(h, grid, 1.0);
  out.ok = out.lhs <= out.rhs + 1e-12;
  return out;
}

ChainCheck thm14_chain_check(std::span<const DiagnosticsRecord> records,
                             const ConstitutiveLaw& law,
                             const ScenarioInfo& scenario) {
  ChainCheck out;
  out.applicable = scenario.long_time_bound_applicable;
  out.exponent = 0.5 * (law.alpha + law.gamma - 1.0);
  if (records.size() < 2 || !(out.exponent > 0.0)) return out;

  const double m = out.exponent;
  auto trap = [&](auto&& value) {
    double acc = 0.0;
    for (std::size_t i = 1; i < records.size(); ++i) {
      acc += 0.5 * (records[i].t - records[i - 1].t) *
             (value(records[i]) + value(records[i - 1]));
    }
    return acc;
  };
  out.horizon = records.back().t - records.front().t;
  const double mass0 = records.front().mass;
  out.lhs = trap([](const DiagnosticsRecord& r) { return r.max_rho; });
  out.middle = 2.0 * trap([&](const DiagnosticsRecord& r) {
                 return std::pow(std::sqrt(r.grad_rho_m_sq), 1.0 / m);
               }) +
               4.0 * out.horizon * mass0;
  out.rhs = 2.0 * trap([](const DiagnosticsRecord& r) {
              return r.grad_rho_m_sq + 1.0;
            }) +
            4.0 * out.horizon * mass0;
  out.time_average = out.horizon > 0.0 ? out.lhs / out.horizon : 0.0;
  out.ok = out.applicable && out.lhs <= out.rhs + 1e-8 * out.horizon;
  return out;
}

SourceFn manufactured_source(const Manufactured& m, const ConstitutiveLaw& law,
                             const Grid& grid) {
  const Field xs(grid.points().begin(), grid.points().end());
  return [m, law, xs](double t, std::span<double> drho, std::span<double> du) {
    const double a = law.alpha;
    const double g = law.gamma;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      const double x = xs[j];
      const double r = m.rho.value(x, t);
      const double r_x = m.rho.dx(x, t, 1);
      const double r_t = m.rho.dt(x, t);
      const double v = m.u.value(x, t);
      const double v_x = m.u.dx(x, t, 1);
      const double v_xx = m.u.dx(x, t, 2);
      const double v_t = m.u.dt(x, t);
      drho[j] += r_t + r_x * v + r * v_x;
      du[j] += v_t + v * v_x -
               law.c_mu * a * std::pow(r, a - 2.0) * r_x * v_x -
               law.c_mu * std::pow(r, a - 1.0) * v_xx +
               law.c_p * g * std::pow(r, g - 2.0) * r_x;
    }
  };
}

MmsError mms_run(const Manufactured& m, const ConstitutiveLaw& law,
                 const Grid& grid, const StepControl& control) {
  FluidState initial{0.0, m.rho.sample(grid, 0.0), m.u.sample(grid, 0.0)};
  RunOptions options;
  options.track_balances = false;
  options.cadence = control.end_time > 0.0 ? control.end_time : 1.0;
  options.source = manufactured_source(m, law, grid);
  const RunOutcome outcome =
      run(initial, law, grid, ForcingSpec::none(), control, options);

  MmsError out;
  out.steps = outcome.steps;
  out.status = outcome.status;
  const double t = outcome.final_state.t;
  const Field rho_exact = m.rho.sample(grid, t);
  const Field u_exact = m.u.sample(grid, t);
  for (std::size_t j = 0; j < rho_exact.size(); ++j) {
    out.error = std::max(out.error,
                         std::abs(outcome.final_state.rho[j] - rho_exact[j]));
    out.error =
        std::max(out.error, std::abs(outcome.final_state.u[j] - u_exact[j]));
  }
  return out;
}

double fit_order(std::span<const double> h, std::span<const double> errors) {
  if (h.size() != errors.size() || h.size() < 2) {
    throw Error(ErrorCode::invalid_argument,
                "fit_order needs at least two matching samples");
  }
  const auto count = static_cast<double>(h.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double x = std::log(h[i]);
    const double y = std::log(errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (count * sxy - sx * sy) / (count * sxx - sx * sx);
}

namespace {

StepControl fixed_step_control(double dt, double end_time) {
  StepControl c;
  c.cfl_adv = 1.0;
  c.cfl_diff = 1.0;
  c.dt_min = std::min(1e-12, dt);
  c.dt_max = dt;
  c.end_time = end_time;
  return c;
}

}  // namespace

Convergence mms_temporal(const Manufactured& m, const ConstitutiveLaw& law,
                         const Grid& grid, std::span<const double> dts,
                         double end_time) {
  Convergence out;
  for (const double dt : dts) {
    const MmsError e = mms_run(m, law, grid, fixed_step_control(dt, end_time));
    out.h.push_back(end_time / static_cast<double>(std::max<std::size_t>(e.steps, 1)));
    out.errors.push_back(e.error);
  }
  out.order = fit_order(out.h, out.errors);
  return out;
}

Convergence mms_spatial(const Manufactured& m, const ConstitutiveLaw& law,
                        std::span<const int> ns, Scheme scheme, double dt,
                        double end_time) {
  Convergence out;
  for (const int n : ns) {
    const Grid grid(n, scheme);
    const MmsError e = mms_run(m, law, grid, fixed_step_control(dt, end_time));
    out.h.push_back(1.0 / n);
    out.errors.push_back(e.error);
  }
  out.order = fit_order(out.h, out.errors);
  return out;
}

}  // namespace dvflow
