#include "dvflow/constitutive.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dvflow/spatial.hpp"

namespace dvflow {

namespace {

void require_positive(double rho, const char* what) {
  if (!(rho > 0.0)) {
    std::ostringstream os;
    os << what << " requires rho > 0, got " << rho;
    throw Error(ErrorCode::non_positive_density, os.str());
  }
}

}  // namespace

double pressure(double rho, const ConstitutiveLaw& law) {
  require_positive(rho, "pressure");
  return law.c_p * std::pow(rho, law.gamma);
}

double pressure_slope(double rho, const ConstitutiveLaw& law) {
  require_positive(rho, "pressure_slope");
  return law.c_p * law.gamma * std::pow(rho, law.gamma - 1.0);
}

double viscosity(double rho, const ConstitutiveLaw& law) {
  require_positive(rho, "viscosity");
  return law.c_mu * std::pow(rho, law.alpha);
}

double viscosity_slope(double rho, const ConstitutiveLaw& law) {
  require_positive(rho, "viscosity_slope");
  return law.c_mu * law.alpha * std::pow(rho, law.alpha - 1.0);
}

double pi_potential(double rho, const ConstitutiveLaw& law) {
  require_positive(rho, "pi_potential");
  // gamma in (0,1) with reference infinity and gamma > 1 with reference zero
  // share the same closed form.
  if (law.gamma == 1.0) return law.c_p * rho * std::log(rho);
  return law.c_p / (law.gamma - 1.0) * std::pow(rho, law.gamma);
}

double enthalpy(double rho, const ConstitutiveLaw& law) {
  require_positive(rho, "enthalpy");
  if (law.gamma == 1.0) return law.c_p * std::log(rho);
  return law.c_p * law.gamma / (law.gamma - 1.0) *
         std::pow(rho, law.gamma - 1.0);
}

const char* to_string(PresetName name) {
  switch (name) {
    case PresetName::generic: return "generic";
    case PresetName::navier_stokes: return "navier_stokes";
    case PresetName::shallow_water: return "shallow_water";
    case PresetName::slender_jet: return "slender_jet";
  }
  return "generic";
}

PresetName preset_from_string(const std::string& name) {
  if (name == "generic") return PresetName::generic;
  if (name == "navier_stokes") return PresetName::navier_stokes;
  if (name == "shallow_water") return PresetName::shallow_water;
  if (name == "slender_jet") return PresetName::slender_jet;
  throw Error(ErrorCode::invalid_argument,
              "unknown preset '" + name +
                  "' (expected generic|navier_stokes|shallow_water|slender_jet)");
}

ModelPreset ModelPreset::generic(const ConstitutiveLaw& law) {
  ModelPreset p;
  p.name = PresetName::generic;
  p.law = law;
  return p;
}

ModelPreset ModelPreset::shallow_water(double gravity, double viscosity) {
  ModelPreset p;
  p.name = PresetName::shallow_water;
  p.gravity = gravity;
  p.viscosity = viscosity;
  return p;
}

ModelPreset ModelPreset::slender_jet(double surface_tension, double viscosity,
                                     double gravity) {
  ModelPreset p;
  p.name = PresetName::slender_jet;
  p.surface_tension = surface_tension;
  p.viscosity = viscosity;
  p.gravity = gravity;
  return p;
}

PresetMapping preset_to_law(const ModelPreset& preset) {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw Error(ErrorCode::invalid_argument,
                  std::string(name) + " must be positive and finite");
    }
  };
  switch (preset.name) {
    case PresetName::generic:
    case PresetName::navier_stokes:
      return {validate_law(preset.law), StateTransform::identity, 0.0};
    case PresetName::shallow_water:
      positive(preset.gravity, "gravity");
      positive(preset.viscosity, "viscosity");
      return {ConstitutiveLaw::make(preset.gravity / 2.0, 2.0,
                                    4.0 * preset.viscosity, 1.0),
              StateTransform::identity, 0.0};
    case PresetName::slender_jet:
      positive(preset.surface_tension, "surface_tension");
      positive(preset.viscosity, "viscosity");
      positive(preset.gravity, "gravity");
      return {ConstitutiveLaw::make(-preset.surface_tension, 0.5,
                                    3.0 * preset.viscosity, 1.0),
              StateTransform::jet_square, -preset.gravity};
  }
  throw Error(ErrorCode::invalid_argument, "unknown preset");
}

Field jet_transform(std::span<const double> values, JetDirection direction) {
  Field out(values.size());
  for (std::size_t j = 0; j < values.size(); ++j) {
    const double v = values[j];
    if (!(v > 0.0)) {
      throw Error(ErrorCode::non_positive_density,
                  "jet_transform requires positive input at index " +
                      std::to_string(j),
                  j);
    }
    out[j] = direction == JetDirection::forward ? v * v : std::sqrt(v);
  }
  return out;
}

const char* to_string(Theorem theorem) {
  switch (theorem) {
    case Theorem::t11_i: return "T1.1(i)";
    case Theorem::t11_ii: return "T1.1(ii)";
    case Theorem::t12: return "T1.2";
    case Theorem::t13: return "T1.3";
    case Theorem::t14: return "T1.4";
  }
  return "?";
}

bool RegimeReport::applies(Theorem theorem) const {
  for (const auto& c : checks) {
    if (c.theorem == theorem) return c.applies;
  }
  return false;
}

std::vector<Theorem> RegimeReport::tags() const {
  std::vector<Theorem> out;
  for (const auto& c : checks) {
    if (c.applies) out.push_back(c.theorem);
  }
  return out;
}

std::string RegimeReport::tag_string() const {
  std::string out;
  for (const auto t : tags()) {
    if (!out.empty()) out += ';';
    out += to_string(t);
  }
  return out.empty() ? "none" : out;
}

namespace {

// Collects the clauses of one hypothesis list and reports which failed.
class Clauses {
 public:
  void add(bool holds, const char* text) {
    if (!holds) failed_.push_back(text);
  }
  HypothesisCheck finish(Theorem theorem, std::string forcing = {}) const {
    HypothesisCheck check{theorem, failed_.empty(), {}, std::move(forcing)};
    if (failed_.empty()) {
      check.reason = "all hypotheses hold";
    } else {
      check.reason = "fails:";
      for (const auto* f : failed_) {
        check.reason += ' ';
        check.reason += f;
      }
    }
    return check;
  }

 private:
  std::vector<const char*> failed_;
};

}  // namespace

RegimeReport classify_regime(const ConstitutiveLaw& law) {
  const double a = law.alpha;
  const double g = law.gamma;
  RegimeReport report;

  Clauses t11i;
  t11i.add(law.c_p > 0.0, "c_p>0");
  t11i.add(a > 0.5, "alpha>1/2");
  t11i.add(g != 1.0, "gamma!=1");
  t11i.add(g >= a - 0.5, "gamma>=alpha-1/2");
  report.checks.push_back(t11i.finish(Theorem::t11_i));

  Clauses t11ii;
  t11ii.add(law.c_p < 0.0, "c_p<0");
  t11ii.add(a > 0.5 && a <= 1.5, "1/2<alpha<=3/2");
  t11ii.add(g < 1.0, "gamma<1");
  t11ii.add(g > 0.0 && g <= a, "0<gamma<=alpha");
  report.checks.push_back(t11ii.finish(Theorem::t11_ii));

  Clauses t12;
  t12.add(law.c_p > 0.0, "c_p>0");
  t12.add(a > 0.5 && a <= 1.0, "alpha in (1/2,1]");
  t12.add(g >= 2.0 * a, "gamma>=2alpha");
  report.checks.push_back(t12.finish(Theorem::t12));

  Clauses t13;
  t13.add(law.c_p > 0.0, "c_p>0");
  t13.add(a > 0.5, "alpha>1/2");
  t13.add(g >= a && g <= a + 1.0, "gamma in [alpha,alpha+1]");
  t13.add(g != 1.0, "gamma!=1");
  report.checks.push_back(t13.finish(Theorem::t13, "time_only"));

  Clauses t14;
  t14.add(a >= 0.5, "alpha>=1/2");
  t14.add(g >= std::max(2.0 - a, a) && g <= a + 1.0,
          "gamma in [max(2-alpha,alpha),alpha+1]");
  t14.add(law.c_p > 0.0, "c_p>0");
  t14.add(law.c_mu > 0.0, "c_mu>0");
  report.checks.push_back(t14.finish(Theorem::t14, "gradient"));

  return report;
}

InitialConditionCheck check_initial_condition_t13(const FluidState& state0,
                                                  const ConstitutiveLaw& law,
                                                  const Grid& grid) {
  validate_state(state0, grid);
  const Field ux = deriv(state0.u, grid, 1);
  const double ratio = law.c_p / law.c_mu;
  double slack = -kInfinity;
  for (std::size_t j = 0; j < ux.size(); ++j) {
    slack = std::max(slack, ux[j] - ratio * std::pow(state0.rho[j],
                                                     law.gamma - law.alpha));
  }
  return {slack <= 0.0, slack};
}

}  // namespace dvflow
