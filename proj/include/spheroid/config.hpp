#pragma once

/// @file config.hpp
/// @brief Experiment configuration: an INI file with fixed sections.
///
///   [geometry]  radius_m, n_cells, cell_volume_m3, tx_r_m, tx_theta_rad, tx_phi_rad
///   [medium]    d_free_m2_s, k_f_per_s
///   [analytic]  omega_max_rad_s, n_samples, t_start_s, t_end_s, t_step_s,
///               truncation_tol (1e-8), aliasing_tol (1e-6), n_cap (200)
///   [pbs]       dt_s, n_particles, seed, t_end_s, stride (1)
///   [probes]    <id> = x_m, y_m, z_m, radius_m      (one line per probe)
///   [sweep]     n_cells_min, n_cells_max, n_cells_step
///   [run]       mode = model | analytic | pbs | compare | sweep
///
/// Values in parentheses are defaults; every other key is required when its
/// section is needed by the selected mode. Unknown sections or keys are errors.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "spheroid/analytic.hpp"
#include "spheroid/model.hpp"
#include "spheroid/pbs.hpp"

namespace spheroid {

enum class Mode { Model, Analytic, Pbs, Compare, Sweep };

std::string_view to_string(Mode m);
std::optional<Mode> parse_mode(std::string_view text);

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  std::vector<std::string> problems;
};

struct AnalyticBlock {
  double omega_max = 4.0 * kPi;
  std::size_t n_samples = 1u << 14;
  double t_start = 0.5;
  double t_end = 600.0;
  double t_step = 0.5;
  double truncation_tol = 1e-8;
  double aliasing_tol = 1e-6;
  int n_cap = 200;

  [[nodiscard]] analytic::FrequencyGrid frequency_grid() const;
  [[nodiscard]] analytic::TruncationPolicy truncation() const;
  [[nodiscard]] TimeGrid time_grid() const;
};

struct PbsBlock {
  double dt = 0.05;
  std::uint64_t n_particles = 0;
  std::uint64_t seed = 0;
  double t_end = 0.0;
  std::uint32_t stride = 1;
};

struct SweepBlock {
  std::int64_t n_cells_min = 0;
  std::int64_t n_cells_max = 0;
  std::int64_t n_cells_step = 1;
};

struct ExperimentConfig {
  SpheroidGeometry geom;
  double d_free = 0.0;
  double k_f = 0.0;
  std::optional<AnalyticBlock> analytic;
  std::optional<PbsBlock> pbs;
  std::vector<pbs::Probe> probes;
  std::optional<SweepBlock> sweep;
  std::optional<Mode> mode;

  [[nodiscard]] MediumModel medium() const;
  [[nodiscard]] pbs::SimConfig sim_config(const MediumModel& medium) const;
  /// Fully resolved config in the input grammar (defaults included).
  [[nodiscard]] std::string canonical() const;
  /// Hex SHA-256 of canonical().
  [[nodiscard]] std::string hash() const;
};

/// Throws ConfigError listing every problem found (with section.key paths).
/// `mode` overrides [run] mode.
ExperimentConfig parse_config(const std::filesystem::path& path, std::optional<Mode> mode = {});
ExperimentConfig parse_config_text(const std::string& text, std::optional<Mode> mode = {});

/// Checks that the blocks needed by `mode` are present and physically valid.
void validate_for_mode(const ExperimentConfig& config, Mode mode);

std::string sha256_hex(std::string_view data);

}  // namespace spheroid
