#pragma once

// Power-law thermodynamics p = c_p rho^gamma, mu = c_mu rho^alpha, the model
// presets that map onto them, and the parameter-regime classifier.

#include <span>
#include <string>
#include <vector>

#include "dvflow/types.hpp"

namespace dvflow {

double pressure(double rho, const ConstitutiveLaw& law);
/// dp/drho.
double pressure_slope(double rho, const ConstitutiveLaw& law);
double viscosity(double rho, const ConstitutiveLaw& law);
/// dmu/drho.
double viscosity_slope(double rho, const ConstitutiveLaw& law);

/// Pressure potential pi(rho) = rho * int_{ref}^{rho} p(s)/s^2 ds with the
/// reference branch fixed by gamma.  pi'' = p'/rho.
double pi_potential(double rho, const ConstitutiveLaw& law);

/// Enthalpy with h' = p'/rho.  Normalised to vanish at rho = 1 when
/// gamma == 1, natural power-law form otherwise.
double enthalpy(double rho, const ConstitutiveLaw& law);

// ---------------------------------------------------------------------------
// Model presets

enum class PresetName { generic, navier_stokes, shallow_water, slender_jet };

const char* to_string(PresetName name);
PresetName preset_from_string(const std::string& name);

struct ModelPreset {
  PresetName name = PresetName::generic;
  /// Used by generic and navier_stokes.
  ConstitutiveLaw law;
  double gravity = 0.0;
  double viscosity = 0.0;
  double surface_tension = 0.0;

  static ModelPreset generic(const ConstitutiveLaw& law);
  static ModelPreset shallow_water(double gravity, double viscosity);
  static ModelPreset slender_jet(double surface_tension, double viscosity,
                                 double gravity);
};

/// How the preset's native variables map onto (rho, u).
enum class StateTransform { identity, jet_square };

struct PresetMapping {
  ConstitutiveLaw law;
  StateTransform transform = StateTransform::identity;
  /// Constant added to the body force f (slender jet: -g).
  double forcing_addend = 0.0;
};

PresetMapping preset_to_law(const ModelPreset& preset);

enum class JetDirection { forward, inverse };

/// forward: rho = h^2; inverse: h = sqrt(rho).  Input must be positive.
Field jet_transform(std::span<const double> values, JetDirection direction);

// ---------------------------------------------------------------------------
// Regime classification against the hypotheses of the existence theorems.

enum class Theorem { t11_i, t11_ii, t12, t13, t14 };

const char* to_string(Theorem theorem);

struct HypothesisCheck {
  Theorem theorem;
  bool applies = false;
  /// Failed clauses, or the satisfied summary when `applies`.
  std::string reason;
  /// Runtime forcing requirement, empty when none.
  std::string forcing_requirement;
};

struct RegimeReport {
  std::vector<HypothesisCheck> checks;

  bool applies(Theorem theorem) const;
  std::vector<Theorem> tags() const;
  /// "T1.1(i);T1.2" style, or "none".
  std::string tag_string() const;
};

RegimeReport classify_regime(const ConstitutiveLaw& law);

struct InitialConditionCheck {
  bool ok = false;
  /// max_j (du0/dx - (c_p/c_mu) rho0^(gamma-alpha)).
  double slack = 0.0;
};

/// Checks du0/dx <= (c_p/c_mu) rho0^(gamma - alpha) pointwise on the grid.
InitialConditionCheck check_initial_condition_t13(const FluidState& state0,
                                                  const ConstitutiveLaw& law,
                                                  const Grid& grid);

}  // namespace dvflow
