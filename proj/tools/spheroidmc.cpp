// spheroidmc: run spheroid-receiver experiments from an INI config.

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>

#include "spheroid/experiment.hpp"
#include "spheroid/signal.hpp"

namespace {

int fail(const std::string& kind, const std::string& message, int code,
         const std::vector<std::string>& details = {}) {
  nlohmann::json err = {{"error", kind}, {"message", message}, {"exit_code", code}};
  if (!details.empty()) err["details"] = details;
  std::cerr << err.dump() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Diffusive channel to a porous spheroidal receiver: model summary, analytic "
               "series solution, particle simulation and receiver comparison.\n\n"
               "Environment: SPHEROID_WORKERS sets the number of simulation threads."};
  std::string config_path;
  std::string mode_text;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  bool quiet = false;
  app.add_option("--config", config_path, "INI experiment configuration")->required();
  app.add_option("--mode", mode_text, "model | analytic | pbs | compare | sweep (overrides [run] mode)")
      ->check(CLI::IsMember({"model", "analytic", "pbs", "compare", "sweep"}));
  app.add_option("--out", out_dir, "Output directory for CSV files");
  app.add_option("--seed", seed, "Simulation seed (overrides [pbs] seed)");
  app.add_flag("--quiet", quiet, "Suppress the configuration echo and progress lines");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    return fail("usage", e.what(), 2);
  }

  try {
    std::optional<spheroid::Mode> mode;
    if (!mode_text.empty()) mode = spheroid::parse_mode(mode_text);
    auto config = spheroid::parse_config(config_path, mode);
    if (seed) {
      if (!config.pbs) return fail("config", "--seed given but the config has no [pbs] section", 1);
      config.pbs->seed = *seed;
    }
    spheroid::RunOptions opt;
    opt.out_dir = out_dir;
    opt.quiet = quiet;
    spheroid::run(*config.mode, config, opt, std::cout);
    return 0;
  } catch (const spheroid::ConfigError& e) {
    return fail("config", "invalid configuration", 1, e.problems);
  } catch (const spheroid::signal::NoPeakError& e) {
    return fail("no_peak", e.what(), 3);
  } catch (const std::exception& e) {
    return fail("runtime", e.what(), 3);
  }
}
