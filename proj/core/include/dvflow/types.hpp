#pragma once

// Shared domain types for the periodic degenerate-viscosity flow solver.
//
// Everything here is a plain value type.  Construction-time validation is the
// only logic; all numerics live in the other headers.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dvflow {

enum class ErrorCode {
  invalid_law,
  invalid_grid,
  invalid_argument,
  non_positive_density,
  length_mismatch,
  non_finite,
  dt_underflow,
  parse,
};

const char* to_string(ErrorCode code);

/// Exception carried by every failing operation in the library.  `index()`
/// is set when the failure is tied to a grid point (e.g. the first
/// non-positive density sample).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what,
        std::optional<std::size_t> index = std::nullopt)
      : std::runtime_error(what), code_(code), index_(index) {}

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> index_;
};

// ---------------------------------------------------------------------------
// Constitutive law p = c_p rho^gamma, mu = c_mu rho^alpha.

/// Reference density of the pressure potential.  The branch is fixed by
/// gamma: gamma > 1 uses zero, gamma in (0,1) uses infinity, gamma == 1 uses 1.
enum class PiReference { zero, infinity, one };

const char* to_string(PiReference ref);
PiReference pi_reference_for(double gamma);

struct ConstitutiveLaw {
  double c_p = 1.0;
  double gamma = 2.0;
  double c_mu = 1.0;
  double alpha = 1.0;
  PiReference pi_reference = PiReference::zero;

  /// Builds a law with the reference branch implied by `gamma`.
  static ConstitutiveLaw make(double c_p, double gamma, double c_mu,
                              double alpha);

  friend bool operator==(const ConstitutiveLaw&,
                         const ConstitutiveLaw&) = default;
};

/// Returns `law` unchanged, or throws Error(invalid_law).
ConstitutiveLaw validate_law(const ConstitutiveLaw& law);

// ---------------------------------------------------------------------------
// Grid on the periodic unit interval (0, 1].

enum class Scheme { spectral, fd4 };

const char* to_string(Scheme scheme);
Scheme scheme_from_string(const std::string& name);

class Grid {
 public:
  /// `n` must be a power of two, at least 16.
  explicit Grid(int n, Scheme scheme = Scheme::spectral);

  int n() const noexcept { return n_; }
  double dx() const noexcept { return dx_; }
  Scheme scheme() const noexcept { return scheme_; }

  /// Node coordinates x_j = j/n, j = 1..n (right-closed).
  std::span<const double> points() const noexcept { return points_; }
  double x(std::size_t i) const noexcept { return points_[i]; }

  /// Largest retained wavenumber under the 2/3 rule.
  int dealias_cutoff() const noexcept { return (n_ - 1) / 3; }

  Grid with_scheme(Scheme scheme) const { return Grid(n_, scheme); }

 private:
  int n_;
  double dx_;
  Scheme scheme_;
  std::vector<double> points_;
};

// ---------------------------------------------------------------------------

using Field = std::vector<double>;

/// Sampled (rho, u) at one instant.  For the slender-jet model `rho` holds h^2.
struct FluidState {
  double t = 0.0;
  Field rho;
  Field u;

  friend bool operator==(const FluidState&, const FluidState&) = default;
};

/// Throws Error(length_mismatch | non_finite | non_positive_density).
void validate_state(const FluidState& state, const Grid& grid);

// ---------------------------------------------------------------------------
// Fourier terms a * cos(2 pi k x + phase) * envelope(t).

enum class Envelope { constant, sine, decay };

const char* to_string(Envelope env);
Envelope envelope_from_string(const std::string& name);

struct FourierTerm {
  int k = 0;
  double amplitude = 0.0;
  double phase = 0.0;
  Envelope envelope = Envelope::constant;
  /// omega for `sine` (sin(omega t)), lambda for `decay` (exp(-lambda t)).
  double rate = 0.0;

  friend bool operator==(const FourierTerm&, const FourierTerm&) = default;
};

enum class ForcingKind { none, time_only, gradient, general };

const char* to_string(ForcingKind kind);
ForcingKind forcing_kind_from_string(const std::string& name);

/// Analytic body force f(x, t).  For `gradient`, `terms` describe the
/// potential g and the force is f = dg/dx.
struct ForcingSpec {
  ForcingKind kind = ForcingKind::none;
  std::vector<FourierTerm> terms;

  static ForcingSpec none() { return {}; }
  static ForcingSpec time_only(std::vector<FourierTerm> terms);
  static ForcingSpec gradient(std::vector<FourierTerm> potential_terms);
  static ForcingSpec general(std::vector<FourierTerm> terms);

  friend bool operator==(const ForcingSpec&, const ForcingSpec&) = default;
};

/// Throws Error(invalid_argument) when the terms contradict the kind.
ForcingSpec validate_forcing(const ForcingSpec& spec);

// ---------------------------------------------------------------------------

/// Scalar functionals of one state.  `residual_*` fields are filled by the
/// integrator with the balance defect accumulated since the previous record.
struct DiagnosticsRecord {
  std::uint64_t run_id = 0;
  double t = 0.0;
  double mass = 0.0;
  double energy = 0.0;
  double entropy = 0.0;
  double min_rho = 0.0;
  double max_rho = 0.0;
  double x_min_rho = 0.0;
  double max_w = 0.0;
  double min_w = 0.0;
  double l2_w = 0.0;
  double dissipation_energy = 0.0;
  double dissipation_entropy = 0.0;
  double power_in_energy = 0.0;
  double power_in_entropy = 0.0;
  /// Right side of d/dt (1/2)||w||^2.
  double w_l2_rhs = 0.0;
  /// ||d/dx (rho^m)||_2^2 with m = (alpha + gamma - 1)/2, when m > 0.
  double grad_rho_m_sq = 0.0;
  /// Seminorms ||d^k rho||_2 and ||d^k u||_2, k = 1..3.
  std::array<double, 3> hk_rho{};
  std::array<double, 3> hk_u{};
  std::optional<double> density_floor_bound;

  double residual_mass = 0.0;
  double residual_energy = 0.0;
  double residual_entropy = 0.0;
  double residual_w_l2 = 0.0;
};

}  // namespace dvflow
