#pragma once

/// @file experiment.hpp
/// @brief Mode runners shared by the CLI and the Python bindings.

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "spheroid/config.hpp"
#include "spheroid/signal.hpp"

namespace spheroid {

struct NamedSeries {
  std::string id;
  TimeSeries series;
};

struct ModelSummary {
  double porosity = 0.0;
  double tortuosity = 0.0;
  double d_eff = 0.0;
  double jump_k = 0.0;
};

struct SweepRow {
  std::int64_t n_cells = 0;
  ModelSummary model;
};

ModelSummary summarize_model(const ExperimentConfig& config);
std::vector<SweepRow> sweep_table(const ExperimentConfig& config);

/// Analytic CGF at each probe centre. A probe on the interface yields the two
/// one-sided limits "<id>:in" and "<id>:out".
std::vector<NamedSeries> analytic_probe_series(const ExperimentConfig& config,
                                               const MediumModel& medium);

/// Simulated probe series and the absorption-rate series ("absorption_rate").
std::vector<NamedSeries> pbs_series(const ExperimentConfig& config, const MediumModel& medium);

struct CompareResult {
  TimeSeries analytic_spheroid;
  TimeSeries analytic_transparent;
  std::optional<TimeSeries> pbs_spheroid;
  std::optional<TimeSeries> pbs_transparent;
};

/// Receiver generation-rate curves for the spheroid and the transparent
/// receiver; the PBS pair is included when the config has a [pbs] section and
/// is averaged into `pbs_bin_s` bins.
CompareResult compare_curves(const ExperimentConfig& config, double pbs_bin_s = 1.0);

struct RunOptions {
  std::filesystem::path out_dir = ".";
  bool quiet = false;
};

struct RunReport {
  std::vector<std::filesystem::path> artifacts;
};

/// Runs `mode`, writes its artifacts under options.out_dir and prints a
/// summary to `log` unless quiet. Throws on any failure.
RunReport run(Mode mode, const ExperimentConfig& config, const RunOptions& options,
              std::ostream& log);

}  // namespace spheroid
