#pragma once

// Semi-discrete right-hand sides of the mass and momentum equations and the
// derived fields built from (rho, u): the active potential w, the effective
// velocity X, and the energy and entropy densities.
//
// The evolved form is the primitive-velocity momentum equation
//
//   u_t = -u u_x + (mu'(rho) rho_x / rho) u_x + (mu(rho)/rho) u_xx
//         - (p'(rho)/rho) rho_x + f,
//
// with the mass flux in conservative form rho_t = -(rho u)_x.  In the
// spectral scheme products are truncated with the 2/3 rule; fractional powers
// of rho are evaluated pointwise.

#include <span>
#include <utility>

#include "dvflow/types.hpp"

namespace dvflow {

struct Rates {
  Field drho;
  Field du;
};

/// f(x, t) on the grid (f = g_x for gradient forcing).
Field forcing_field(const ForcingSpec& forcing, const Grid& grid, double t);
/// f_x(x, t) on the grid, evaluated analytically.
Field forcing_gradient(const ForcingSpec& forcing, const Grid& grid, double t);

Rates rhs(const FluidState& state, const ConstitutiveLaw& law,
          const Grid& grid, const ForcingSpec& forcing, double t);

/// u_t assembled from the conservative momentum equation
/// (rho u)_t = -(rho u^2)_x - p_x + (mu u_x)_x + rho f; cross-check only.
Field momentum_form_du(const FluidState& state, const ConstitutiveLaw& law,
                       const Grid& grid, const ForcingSpec& forcing, double t);

/// Slender-jet equations in their native (h, u) variables:
///   h_t = -u h_x - h u_x / 2
///   u_t = -u u_x - sigma (1/h)_x + 3 nu (h^2 u_x)_x / h^2 - g + f.
/// `state.rho` holds h here.
Rates jet_rhs(const FluidState& state, double surface_tension, double nu,
              double gravity, const Grid& grid, const ForcingSpec& extra,
              double t);

/// w = -p(rho) + mu(rho) u_x.
Field active_potential(const FluidState& state, const ConstitutiveLaw& law,
                       const Grid& grid);

/// X = u + c_mu rho^(alpha - 2) rho_x.
Field bd_velocity(const FluidState& state, const ConstitutiveLaw& law,
                  const Grid& grid);

/// e = rho u^2/2 + pi(rho), s = rho X^2/2 + pi(rho).
std::pair<Field, Field> energy_entropy_densities(const FluidState& state,
                                                 const ConstitutiveLaw& law,
                                                 const Grid& grid);

/// Right side of the active-potential equation
///   w_t = c_mu rho^(a-1) w_xx - (u + c_mu rho^(a-2) rho_x) w_x
///         + (c_p/c_mu)(g - 2(a+1)) rho^(g-a) w - ((a+1)/c_mu) rho^(-a) w^2
///         + (c_p^2/c_mu)(g - (a+1)) rho^(2g-a) + c_mu rho^a f_x
/// with a = alpha, g = gamma.
Field w_rhs(const FluidState& state, const ConstitutiveLaw& law,
            const Grid& grid, const ForcingSpec& forcing, double t);

struct DerivedFields {
  Field w;
  Field X;
  Field e;
  Field s;
  Field p;
  Field mu;
};

DerivedFields derived_fields(const FluidState& state,
                             const ConstitutiveLaw& law, const Grid& grid);

}  // namespace dvflow
