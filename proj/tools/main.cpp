#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dvflow/cli/commands.hpp"

namespace {

using dvflow::cli::ConfigError;
using dvflow::cli::RunConfig;

RunConfig load_config(const std::string& path) {
  if (path.empty()) return dvflow::cli::parse_config("");
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError(dvflow::cli::ConfigErrorKind::invalid_value, "", 0,
                      "cannot read config file '" + path + "'");
  }
  std::ostringstream text;
  text << in.rdbuf();
  return dvflow::cli::parse_config(text.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Periodic 1D degenerate-viscosity compressible flow solver"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  long long seed = -1;
  int jobs = 1;
  std::string scheme;
  std::vector<int> only;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "Configuration file")->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "Output directory (default: $OUT_DIR or ./out)");
    sub->add_option("--seed", seed, "Seed for randomized checks")->check(CLI::NonNegativeNumber);
    sub->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--scheme", scheme, "Spatial scheme override")
        ->check(CLI::IsMember({"spectral", "fd4"}));
  };
  CLI::App* run_cmd = app.add_subcommand("run", "Integrate one scenario and write outputs");
  CLI::App* verify_cmd = app.add_subcommand("verify", "Run the acceptance suite");
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Run a parameter sweep");
  CLI::App* classify_cmd =
      app.add_subcommand("classify", "Print the regime table for the configured law");
  for (auto* sub : {run_cmd, verify_cmd, sweep_cmd, classify_cmd}) common(sub);
  verify_cmd->add_option("--only", only, "Check ids to run (default: all)")
      ->check(CLI::Range(1, 12));

  CLI11_PARSE(app, argc, argv);

  dvflow::cli::CommandContext ctx;
  ctx.out = &std::cout;
  ctx.err = &std::cerr;
  ctx.jobs = jobs;
  if (!out_dir.empty()) {
    ctx.out_dir = out_dir;
  } else if (const char* env = std::getenv("OUT_DIR"); env && *env) {
    ctx.out_dir = env;
  }

  try {
    RunConfig config = load_config(config_path);
    if (seed >= 0) config.seed = static_cast<std::uint64_t>(seed);
    if (!scheme.empty()) config.scheme = dvflow::scheme_from_string(scheme);
    if (!only.empty()) config.verify_checks = only;

    if (*run_cmd) return dvflow::cli::cmd_run(config, ctx);
    if (*verify_cmd) return dvflow::cli::cmd_verify(config, ctx);
    if (*sweep_cmd) return dvflow::cli::cmd_sweep(config, ctx);
    return dvflow::cli::cmd_classify(config, ctx);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return dvflow::cli::kExitConfig;
  } catch (const dvflow::Error& e) {
    std::cerr << "error: " << dvflow::to_string(e.code()) << ": " << e.what() << '\n';
    return dvflow::cli::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return dvflow::cli::kExitNumerical;
  }
}
