#pragma once

// Plain-text run configuration: `[section]` headers, `key = value` lines,
// `#` comments.  Repeatable keys (initial and forcing terms) accumulate.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dvflow/constitutive.hpp"
#include "dvflow/integrator.hpp"

namespace dvflow::cli {

enum class ConfigErrorKind {
  syntax,
  unknown_section,
  unknown_key,
  invalid_value,
  non_positive_initial_density,
};

const char* to_string(ConfigErrorKind kind);

class ConfigError : public std::runtime_error {
 public:
  ConfigError(ConfigErrorKind kind, std::string path, int line,
              const std::string& message);

  ConfigErrorKind kind() const noexcept { return kind_; }
  /// Dotted "section.key" path, empty for file-level errors.
  const std::string& path() const noexcept { return path_; }
  /// 1-based source line, 0 when the error is not tied to a line.
  int line() const noexcept { return line_; }

 private:
  ConfigErrorKind kind_;
  std::string path_;
  int line_;
};

enum class OutputKind { timeseries_csv, snapshots_csv, summary_json, plots_svg };

const char* to_string(OutputKind kind);

struct ModelSection {
  PresetName preset = PresetName::generic;
  ConstitutiveLaw law;  // generic / navier_stokes
  double gravity = 9.81;
  double viscosity = 0.01;
  double surface_tension = 1.0;
};

/// mean + sum of terms; for the slender jet these describe h rather than rho.
struct InitialSection {
  double rho_mean = 1.0;
  std::vector<FourierTerm> rho_terms;
  double u_mean = 0.0;
  std::vector<FourierTerm> u_terms;
};

struct SweepSection {
  std::optional<std::vector<double>> gamma;
  std::optional<std::vector<double>> alpha;
  std::optional<std::vector<double>> c_p;
  std::optional<std::vector<double>> amplitude;
};

struct RunConfig {
  ModelSection model;
  int n = 128;
  Scheme scheme = Scheme::spectral;
  InitialSection initial;
  ForcingSpec forcing;
  StepControl control;
  /// Diagnostic interval; defaults to end_time / 100.
  double cadence = 0.0;
  /// Defaults to {0, end_time}.
  std::vector<double> snapshot_times;
  std::vector<OutputKind> outputs;
  std::vector<std::string> plot_columns;
  std::uint64_t seed = 20240601;
  SweepSection sweep;
  /// Check ids for `verify`; empty means all.
  std::vector<int> verify_checks;
};

/// Parses and validates; every default is filled in the result.
RunConfig parse_config(std::string_view text);

/// Everything a run needs, derived from a config.
struct ResolvedRun {
  PresetMapping mapping;
  Grid grid;
  /// In solver variables (rho = h^2 for the slender jet).
  FluidState initial;
  /// User forcing plus any preset addend.
  ForcingSpec forcing;
  StepControl control;
  RunOptions options;
};

/// Throws ConfigError(non_positive_initial_density) when rho0 <= 0 somewhere.
ResolvedRun resolve(const RunConfig& config);

/// Config text that parses back to `config`.
std::string serialize_config(const RunConfig& config);

}  // namespace dvflow::cli
