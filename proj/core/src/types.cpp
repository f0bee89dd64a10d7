#include "dvflow/types.hpp"

#include <cmath>
#include <sstream>

namespace dvflow {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_law: return "InvalidLaw";
    case ErrorCode::invalid_grid: return "InvalidGrid";
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::non_positive_density: return "NonPositiveDensity";
    case ErrorCode::length_mismatch: return "LengthMismatch";
    case ErrorCode::non_finite: return "NonFinite";
    case ErrorCode::dt_underflow: return "DtUnderflow";
    case ErrorCode::parse: return "ParseError";
  }
  return "Unknown";
}

const char* to_string(PiReference ref) {
  switch (ref) {
    case PiReference::zero: return "zero";
    case PiReference::infinity: return "infinity";
    case PiReference::one: return "one";
  }
  return "zero";
}

PiReference pi_reference_for(double gamma) {
  if (gamma > 1.0) return PiReference::zero;
  if (gamma < 1.0) return PiReference::infinity;
  return PiReference::one;
}

ConstitutiveLaw ConstitutiveLaw::make(double c_p, double gamma, double c_mu,
                                      double alpha) {
  return ConstitutiveLaw{c_p, gamma, c_mu, alpha, pi_reference_for(gamma)};
}

ConstitutiveLaw validate_law(const ConstitutiveLaw& law) {
  auto fail = [](const std::string& msg) {
    throw Error(ErrorCode::invalid_law, msg);
  };
  if (!std::isfinite(law.c_p) || !std::isfinite(law.gamma) ||
      !std::isfinite(law.c_mu) || !std::isfinite(law.alpha)) {
    fail("law parameters must be finite");
  }
  if (law.c_p == 0.0) fail("c_p must be nonzero");
  if (!(law.c_mu > 0.0)) fail("c_mu must be positive");
  if (!(law.gamma > 0.0)) fail("gamma must be positive");
  if (law.pi_reference != pi_reference_for(law.gamma)) {
    std::ostringstream os;
    os << "pi_reference '" << to_string(law.pi_reference)
       << "' does not match gamma = " << law.gamma << " (expected '"
       << to_string(pi_reference_for(law.gamma)) << "')";
    fail(os.str());
  }
  return law;
}

const char* to_string(Scheme scheme) {
  return scheme == Scheme::spectral ? "spectral" : "fd4";
}

Scheme scheme_from_string(const std::string& name) {
  if (name == "spectral") return Scheme::spectral;
  if (name == "fd4") return Scheme::fd4;
  throw Error(ErrorCode::invalid_argument,
              "unknown scheme '" + name + "' (expected spectral|fd4)");
}

Grid::Grid(int n, Scheme scheme) : n_(n), dx_(0.0), scheme_(scheme) {
  if (n < 16 || (n & (n - 1)) != 0) {
    throw Error(ErrorCode::invalid_grid,
                "grid size must be a power of two >= 16, got " +
                    std::to_string(n));
  }
  dx_ = 1.0 / n;
  points_.resize(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) {
    points_[static_cast<std::size_t>(j - 1)] = static_cast<double>(j) / n;
  }
}

void validate_state(const FluidState& state, const Grid& grid) {
  const auto n = static_cast<std::size_t>(grid.n());
  if (state.rho.size() != n || state.u.size() != n) {
    std::ostringstream os;
    os << "state arrays have lengths (" << state.rho.size() << ", "
       << state.u.size() << "), grid has n = " << n;
    throw Error(ErrorCode::length_mismatch, os.str());
  }
  if (!std::isfinite(state.t)) {
    throw Error(ErrorCode::non_finite, "state time is not finite");
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!std::isfinite(state.rho[j]) || !std::isfinite(state.u[j])) {
      throw Error(ErrorCode::non_finite,
                  "non-finite sample at index " + std::to_string(j), j);
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!(state.rho[j] > 0.0)) {
      std::ostringstream os;
      os << "density " << state.rho[j] << " <= 0 at index " << j;
      throw Error(ErrorCode::non_positive_density, os.str(), j);
    }
  }
}

const char* to_string(Envelope env) {
  switch (env) {
    case Envelope::constant: return "constant";
    case Envelope::sine: return "sin";
    case Envelope::decay: return "exp";
  }
  return "constant";
}

Envelope envelope_from_string(const std::string& name) {
  if (name == "constant") return Envelope::constant;
  if (name == "sin") return Envelope::sine;
  if (name == "exp") return Envelope::decay;
  throw Error(ErrorCode::invalid_argument,
              "unknown envelope '" + name + "' (expected constant|sin|exp)");
}

const char* to_string(ForcingKind kind) {
  switch (kind) {
    case ForcingKind::none: return "none";
    case ForcingKind::time_only: return "time_only";
    case ForcingKind::gradient: return "gradient";
    case ForcingKind::general: return "general";
  }
  return "none";
}

ForcingKind forcing_kind_from_string(const std::string& name) {
  if (name == "none") return ForcingKind::none;
  if (name == "time_only") return ForcingKind::time_only;
  if (name == "gradient") return ForcingKind::gradient;
  if (name == "general") return ForcingKind::general;
  throw Error(ErrorCode::invalid_argument,
              "unknown forcing kind '" + name +
                  "' (expected none|time_only|gradient|general)");
}

ForcingSpec ForcingSpec::time_only(std::vector<FourierTerm> terms) {
  return validate_forcing({ForcingKind::time_only, std::move(terms)});
}

ForcingSpec ForcingSpec::gradient(std::vector<FourierTerm> potential_terms) {
  return validate_forcing({ForcingKind::gradient, std::move(potential_terms)});
}

ForcingSpec ForcingSpec::general(std::vector<FourierTerm> terms) {
  return validate_forcing({ForcingKind::general, std::move(terms)});
}

ForcingSpec validate_forcing(const ForcingSpec& spec) {
  for (const auto& term : spec.terms) {
    if (term.k < 0) {
      throw Error(ErrorCode::invalid_argument,
                  "forcing wavenumbers must be non-negative");
    }
    if (!std::isfinite(term.amplitude) || !std::isfinite(term.phase) ||
        !std::isfinite(term.rate)) {
      throw Error(ErrorCode::invalid_argument, "forcing term not finite");
    }
  }
  if (spec.kind == ForcingKind::none && !spec.terms.empty()) {
    throw Error(ErrorCode::invalid_argument,
                "forcing kind 'none' cannot carry terms");
  }
  if (spec.kind == ForcingKind::time_only) {
    for (const auto& term : spec.terms) {
      if (term.k != 0) {
        throw Error(ErrorCode::invalid_argument,
                    "time_only forcing requires k = 0 in every term");
      }
    }
  }
  return spec;
}

}  // namespace dvflow
