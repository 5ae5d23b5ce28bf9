#pragma once

/// @file pbs.hpp
/// @brief Particle-based Brownian simulator for the spheroid channel.
///
/// Walkers start at the transmitter and take Gaussian steps with the local
/// diffusion coefficient. The spheroid is a homogeneous effective medium:
/// a step crossing r = R_s has its remainder rescaled by the ratio of root
/// diffusivities, and inside the spheroid a walker is absorbed with
/// probability k_f * dt per step.

#include <cstdint>
#include <string>
#include <vector>

#include "spheroid/model.hpp"
#include "spheroid/rng.hpp"
#include "spheroid/timeseries.hpp"

namespace spheroid::pbs {

struct Probe {
  std::string id;
  Vec3 center;
  double radius = 10e-6;
};

struct SimConfig {
  double dt = 0.05;
  std::uint64_t n_particles = 0;
  std::uint64_t seed = 0;
  double t_end = 0.0;
  SpheroidGeometry geom;
  MediumModel medium;
  std::vector<Probe> probes;
  bool record_absorption = true;
  /// Probe samples are taken every `stride` steps.
  std::uint32_t stride = 1;
  /// 0 selects SPHEROID_WORKERS or the OpenMP default.
  int workers = 0;

  [[nodiscard]] std::uint32_t n_steps() const;
  /// Throws std::invalid_argument listing every violated field.
  void validate() const;
};

enum class Status : std::uint8_t { Alive, Absorbed };

struct ParticleEnsemble {
  std::vector<Vec3> positions;
  std::vector<Status> status;
  std::vector<double> absorption_time;
  std::vector<std::uint64_t> stream_ids;

  static ParticleEnsemble released_at(Vec3 origin, std::uint64_t n);
  [[nodiscard]] std::size_t size() const { return positions.size(); }
  [[nodiscard]] std::uint64_t alive_count() const;
  [[nodiscard]] std::uint64_t absorbed_count() const;
};

Vec3 step_particle(Vec3 position, double dt, double local_d, const rng::ParticleStream& stream,
                   std::uint32_t step);

/// Adjusts a step that crosses r = R_s; other segments are returned unchanged.
Vec3 handle_boundary_crossing(Vec3 start, Vec3 proposed_end, const SpheroidGeometry& geom,
                              const MediumModel& medium);

/// Marks absorptions for step `step` (interval [step*dt, (step+1)*dt]).
/// Returns the number of newly absorbed particles.
std::uint64_t apply_absorption(ParticleEnsemble& ensemble, double dt, const MediumModel& medium,
                               const SpheroidGeometry& geom, std::uint64_t seed,
                               std::uint32_t step);

double estimate_concentration(const ParticleEnsemble& ensemble, Vec3 probe_center,
                              double probe_radius, std::uint64_t n_released);

/// True when the probe ball intersects the spheroid surface.
bool straddles_interface(const Probe& probe, const SpheroidGeometry& geom);

struct ProbeSeries {
  std::string id;
  TimeSeries series;
  std::vector<std::uint64_t> counts;
  double volume = 0.0;
};

struct SimResult {
  /// Straddling probes yield two entries, "<id>:in" and "<id>:out".
  std::vector<ProbeSeries> probes;
  TimeSeries absorption_rate;
  std::vector<std::uint64_t> absorbed_per_step;
  ParticleEnsemble final_ensemble;
};

SimResult run_simulation(const SimConfig& config);

/// Worker count actually used for `requested` (see SimConfig::workers).
int resolve_workers(int requested);

}  // namespace spheroid::pbs
