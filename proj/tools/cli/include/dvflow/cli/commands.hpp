#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "dvflow/cli/config.hpp"

namespace dvflow::cli {

inline constexpr int kExitCompleted = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitVacuum = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitConfig = 4;

struct CommandContext {
  std::filesystem::path out_dir = "out";
  int jobs = 1;
  std::ostream* out = nullptr;
  std::ostream* err = nullptr;
};

int exit_code_for(RunStatus status);

/// Single run; writes the configured outputs into ctx.out_dir.
int cmd_run(const RunConfig& config, const CommandContext& ctx);

/// Acceptance suite; prints the JSON verdict and writes verify.json.
int cmd_verify(const RunConfig& config, const CommandContext& ctx);

/// Parameter sweep; writes sweep.csv.  Always 0 unless the config is invalid.
int cmd_sweep(const RunConfig& config, const CommandContext& ctx);

/// Prints the regime table of the configured law.
int cmd_classify(const RunConfig& config, const CommandContext& ctx);

nlohmann::json config_to_json(const RunConfig& config);

struct SweepRow {
  double gamma = 0.0;
  double alpha = 0.0;
  double c_p = 0.0;
  double amplitude = 0.0;
  std::string regime;
  std::string status;
  std::size_t steps = 0;
  double final_t = 0.0;
  /// min over records of (min_rho - floor bound); absent when not applicable.
  std::optional<double> min_floor_margin;
  double max_w_worst = 0.0;
  std::string message;
};

/// Rows sorted by (gamma, alpha, c_p, amplitude).
std::vector<SweepRow> run_sweep(const RunConfig& config, int jobs);
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace dvflow::cli
