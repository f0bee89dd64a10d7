#include "dvflow/dynamics.hpp"

#include <cmath>

#include "dvflow/constitutive.hpp"
#include "dvflow/fourier.hpp"
#include "dvflow/spatial.hpp"

namespace dvflow {

namespace {

// f = g_x for gradient forcing, so derivative orders shift by one.
int order_shift(const ForcingSpec& forcing) {
  return forcing.kind == ForcingKind::gradient ? 1 : 0;
}

}  // namespace

Field forcing_field(const ForcingSpec& forcing, const Grid& grid, double t) {
  return sample_terms(forcing.terms, grid, t, order_shift(forcing));
}

Field forcing_gradient(const ForcingSpec& forcing, const Grid& grid, double t) {
  return sample_terms(forcing.terms, grid, t, 1 + order_shift(forcing));
}

Rates rhs(const FluidState& state, const ConstitutiveLaw& law,
          const Grid& grid, const ForcingSpec& forcing, double t) {
  validate_state(state, grid);
  const auto n = state.rho.size();
  const auto& rho = state.rho;
  const auto& u = state.u;

  Field flux(n);
  for (std::size_t j = 0; j < n; ++j) flux[j] = rho[j] * u[j];
  Rates out;
  out.drho = deriv_dealiased(flux, grid);
  for (auto& v : out.drho) v = -v;

  const Field rho_x = deriv(rho, grid, 1);
  auto [u_x, u_xx] = deriv12(u, grid);
  const Field f = forcing_field(forcing, grid, t);

  Field du(n);
  const double a = law.alpha;
  const double g = law.gamma;
  for (std::size_t j = 0; j < n; ++j) {
    const double r = rho[j];
    const double visc_drift = law.c_mu * a * std::pow(r, a - 2.0) * rho_x[j];
    const double visc_diff = law.c_mu * std::pow(r, a - 1.0);
    const double press = law.c_p * g * std::pow(r, g - 2.0);
    du[j] = -u[j] * u_x[j] + visc_drift * u_x[j] + visc_diff * u_xx[j] -
            press * rho_x[j] + f[j];
  }
  out.du = dealias(du, grid);
  return out;
}

Field momentum_form_du(const FluidState& state, const ConstitutiveLaw& law,
                       const Grid& grid, const ForcingSpec& forcing, double t) {
  validate_state(state, grid);
  const auto n = state.rho.size();
  const auto& rho = state.rho;
  const auto& u = state.u;

  Field mass_flux(n), mom_flux(n), stress(n);
  const Field u_x = deriv(u, grid, 1);
  for (std::size_t j = 0; j < n; ++j) {
    mass_flux[j] = rho[j] * u[j];
    mom_flux[j] = rho[j] * u[j] * u[j] + pressure(rho[j], law) -
                  viscosity(rho[j], law) * u_x[j];
  }
  const Field drho = deriv(mass_flux, grid, 1);
  const Field dmom = deriv(mom_flux, grid, 1);
  const Field f = forcing_field(forcing, grid, t);
  Field du(n);
  for (std::size_t j = 0; j < n; ++j) {
    // (rho u)_t = -dmom + rho f and rho_t = -drho.
    du[j] = (-dmom[j] + rho[j] * f[j] + u[j] * drho[j]) / rho[j];
  }
  return du;
}

Rates jet_rhs(const FluidState& state, double surface_tension, double nu,
              double gravity, const Grid& grid, const ForcingSpec& extra,
              double t) {
  validate_state(state, grid);
  const auto n = state.rho.size();
  const auto& h = state.rho;
  const auto& u = state.u;
  const Field h_x = deriv(h, grid, 1);
  auto [u_x, u_xx] = deriv12(u, grid);
  const Field f = forcing_field(extra, grid, t);

  Field dh(n), du(n);
  for (std::size_t j = 0; j < n; ++j) {
    dh[j] = -u[j] * h_x[j] - 0.5 * h[j] * u_x[j];
    du[j] = -u[j] * u_x[j] + surface_tension * h_x[j] / (h[j] * h[j]) +
            3.0 * nu * (u_xx[j] + 2.0 * h_x[j] * u_x[j] / h[j]) - gravity +
            f[j];
  }
  return {dealias(dh, grid), dealias(du, grid)};
}

Field active_potential(const FluidState& state, const ConstitutiveLaw& law,
                       const Grid& grid) {
  validate_state(state, grid);
  const Field u_x = deriv(state.u, grid, 1);
  Field w(u_x.size());
  for (std::size_t j = 0; j < w.size(); ++j) {
    w[j] = -pressure(state.rho[j], law) + viscosity(state.rho[j], law) * u_x[j];
  }
  return w;
}

Field bd_velocity(const FluidState& state, const ConstitutiveLaw& law,
                  const Grid& grid) {
  validate_state(state, grid);
  const Field rho_x = deriv(state.rho, grid, 1);
  Field X(rho_x.size());
  for (std::size_t j = 0; j < X.size(); ++j) {
    X[j] = state.u[j] +
           law.c_mu * std::pow(state.rho[j], law.alpha - 2.0) * rho_x[j];
  }
  return X;
}

std::pair<Field, Field> energy_entropy_densities(const FluidState& state,
                                                 const ConstitutiveLaw& law,
                                                 const Grid& grid) {
  const Field X = bd_velocity(state, law, grid);
  const auto n = X.size();
  Field e(n), s(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double r = state.rho[j];
    const double pi = pi_potential(r, law);
    e[j] = 0.5 * r * state.u[j] * state.u[j] + pi;
    s[j] = 0.5 * r * X[j] * X[j] + pi;
  }
  return {std::move(e), std::move(s)};
}

Field w_rhs(const FluidState& state, const ConstitutiveLaw& law,
            const Grid& grid, const ForcingSpec& forcing, double t) {
  const Field w = active_potential(state, law, grid);
  const Field rho_x = deriv(state.rho, grid, 1);
  auto [w_x, w_xx] = deriv12(w, grid);
  const Field f_x = forcing_gradient(forcing, grid, t);

  const double a = law.alpha;
  const double g = law.gamma;
  const double cp = law.c_p;
  const double cm = law.c_mu;
  const double linear = cp / cm * (g - 2.0 * (a + 1.0));
  const double quadratic = (a + 1.0) / cm;
  const double source = cp * cp / cm * (g - (a + 1.0));

  Field out(w.size());
  for (std::size_t j = 0; j < w.size(); ++j) {
    const double r = state.rho[j];
    const double drift = state.u[j] + cm * std::pow(r, a - 2.0) * rho_x[j];
    out[j] = cm * std::pow(r, a - 1.0) * w_xx[j] - drift * w_x[j] +
             linear * std::pow(r, g - a) * w[j] -
             quadratic * std::pow(r, -a) * w[j] * w[j] +
             source * std::pow(r, 2.0 * g - a) + cm * std::pow(r, a) * f_x[j];
  }
  return out;
}

DerivedFields derived_fields(const FluidState& state,
                             const ConstitutiveLaw& law, const Grid& grid) {
  DerivedFields d;
  d.w = active_potential(state, law, grid);
  d.X = bd_velocity(state, law, grid);
  auto [e, s] = energy_entropy_densities(state, law, grid);
  d.e = std::move(e);
  d.s = std::move(s);
  d.p.resize(d.w.size());
  d.mu.resize(d.w.size());
  for (std::size_t j = 0; j < d.w.size(); ++j) {
    d.p[j] = pressure(state.rho[j], law);
    d.mu[j] = viscosity(state.rho[j], law);
  }
  return d;
}

}  // namespace dvflow
