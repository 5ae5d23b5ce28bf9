#include "spheroid/pbs.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace spheroid::pbs {

namespace {

constexpr double kMaxAbsorptionProbability = 0.1;

struct Counter {
  Vec3 center;
  double radius2 = 0.0;
  // 0 = whole ball, -1 = inner half, +1 = outer half
  int side = 0;
  Vec3 normal;
};

std::vector<Counter> build_counters(const SimConfig& config, std::vector<ProbeSeries>& series) {
  std::vector<Counter> counters;
  const double dt_sample = config.dt * config.stride;
  auto add = [&](const Probe& p, int side, const std::string& id, double volume) {
    Counter c;
    c.center = p.center;
    c.radius2 = p.radius * p.radius;
    c.side = side;
    const double rc = p.center.norm();
    c.normal = rc > 0.0 ? (1.0 / rc) * p.center : Vec3{0.0, 0.0, 1.0};
    counters.push_back(c);
    ProbeSeries s;
    s.id = id;
    s.volume = volume;
    s.series.t0 = dt_sample;
    s.series.dt_sample = dt_sample;
    s.series.unit = Unit::Concentration;
    s.series.provenance = Provenance::Pbs;
    series.push_back(std::move(s));
  };
  for (const auto& p : config.probes) {
    const double v = 4.0 / 3.0 * kPi * p.radius * p.radius * p.radius;
    if (straddles_interface(p, config.geom)) {
      add(p, -1, p.id + ":in", 0.5 * v);
      add(p, +1, p.id + ":out", 0.5 * v);
    } else {
      add(p, 0, p.id, v);
    }
  }
  return counters;
}

inline bool in_counter(const Counter& c, Vec3 p) {
  const Vec3 d = p - c.center;
  if (d.norm2() > c.radius2) return false;
  if (c.side == 0) return true;
  const double s = dot(d, c.normal);
  return c.side < 0 ? s < 0.0 : s >= 0.0;
}

inline bool absorbs(const rng::ParticleStream& stream, std::uint32_t step, double p_abs) {
  return stream.uniform(step, rng::Purpose::Absorption) < p_abs;
}

}  // namespace

std::uint32_t SimConfig::n_steps() const {
  if (!(dt > 0.0) || !(t_end > 0.0)) return 0;
  return static_cast<std::uint32_t>(std::llround(t_end / dt));
}

void SimConfig::validate() const {
  std::vector<std::string> errors;
  if (!(dt > 0.0)) errors.emplace_back("pbs.dt: must be > 0");
  if (!(t_end > 0.0)) errors.emplace_back("pbs.t_end: must be > 0");
  if (dt > 0.0 && t_end / dt > 4.0e9) errors.emplace_back("pbs.t_end: too many steps");
  if (stride == 0) errors.emplace_back("pbs.stride: must be >= 1");
  try {
    geom.validate();
  } catch (const std::exception& e) {
    errors.emplace_back(e.what());
  }
  try {
    medium.validate();
  } catch (const std::exception& e) {
    errors.emplace_back(e.what());
  }
  if (medium.k_f * dt > kMaxAbsorptionProbability)
    errors.emplace_back("pbs.dt: k_f * dt must be <= 0.1");
  if (geom.radius_m > 0.0 && medium.d_free > 0.0 && dt > 0.0 &&
      std::sqrt(2.0 * medium.d_free * dt) > geom.radius_m / 10.0)
    errors.emplace_back("pbs.dt: step length sqrt(2 D dt) must be <= R_s / 10");
  for (const auto& p : probes) {
    if (!(p.radius > 0.0)) errors.emplace_back("probes." + p.id + ".radius: must be > 0");
    else if (geom.radius_m > 0.0 && p.radius > geom.radius_m / 10.0)
      errors.emplace_back("probes." + p.id + ".radius: must be <= R_s / 10");
  }
  if (!errors.empty()) {
    std::ostringstream msg;
    msg << "invalid simulation config:";
    for (const auto& e : errors) msg << "\n  " << e;
    throw std::invalid_argument(msg.str());
  }
}

ParticleEnsemble ParticleEnsemble::released_at(Vec3 origin, std::uint64_t n) {
  ParticleEnsemble e;
  e.positions.assign(n, origin);
  e.status.assign(n, Status::Alive);
  e.absorption_time.assign(n, 0.0);
  e.stream_ids.resize(n);
  for (std::uint64_t i = 0; i < n; ++i) e.stream_ids[i] = i;
  return e;
}

std::uint64_t ParticleEnsemble::alive_count() const {
  return static_cast<std::uint64_t>(std::count(status.begin(), status.end(), Status::Alive));
}

std::uint64_t ParticleEnsemble::absorbed_count() const { return size() - alive_count(); }

Vec3 step_particle(Vec3 position, double dt, double local_d, const rng::ParticleStream& stream,
                   std::uint32_t step) {
  const double sigma = std::sqrt(2.0 * local_d * dt);
  const auto g = stream.normals(step);
  return {position.x + sigma * g[0], position.y + sigma * g[1], position.z + sigma * g[2]};
}

Vec3 handle_boundary_crossing(Vec3 start, Vec3 proposed_end, const SpheroidGeometry& geom,
                              const MediumModel& medium) {
  const double r2 = geom.radius_m * geom.radius_m;
  const Vec3 d = proposed_end - start;
  const double a = d.norm2();
  if (a == 0.0) return proposed_end;
  const double b = dot(start, d);
  const double c = start.norm2() - r2;
  const double disc = b * b - a * c;
  if (disc <= 0.0) return proposed_end;
  const double root = std::sqrt(disc);

  double t = 0.0;
  double scale = 1.0;
  if (c < 0.0) {
    // inside: exit root
    t = (-b + root) / a;
    if (t >= 1.0) return proposed_end;
    scale = std::sqrt(medium.d_free / medium.d_eff);
  } else {
    t = (-b - root) / a;
    if (t < 0.0 || t >= 1.0) return proposed_end;
    scale = std::sqrt(medium.d_eff / medium.d_free);
  }
  if (scale == 1.0) return proposed_end;
  const Vec3 hit = start + t * d;
  return hit + (scale * (1.0 - t)) * d;
}

std::uint64_t apply_absorption(ParticleEnsemble& ensemble, double dt, const MediumModel& medium,
                               const SpheroidGeometry& geom, std::uint64_t seed,
                               std::uint32_t step) {
  if (medium.k_f <= 0.0) return 0;
  const double p_abs = medium.k_f * dt;
  const double r2 = geom.radius_m * geom.radius_m;
  std::uint64_t n = 0;
  for (std::size_t i = 0; i < ensemble.size(); ++i) {
    if (ensemble.status[i] != Status::Alive) continue;
    if (!(ensemble.positions[i].norm2() < r2)) continue;
    const rng::ParticleStream stream(seed, ensemble.stream_ids[i]);
    if (absorbs(stream, step, p_abs)) {
      ensemble.status[i] = Status::Absorbed;
      ensemble.absorption_time[i] = (step + 0.5) * dt;
      ++n;
    }
  }
  return n;
}

double estimate_concentration(const ParticleEnsemble& ensemble, Vec3 probe_center,
                              double probe_radius, std::uint64_t n_released) {
  if (!(probe_radius > 0.0)) throw std::invalid_argument("probe_radius must be > 0");
  if (n_released == 0) return 0.0;
  const double r2 = probe_radius * probe_radius;
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < ensemble.size(); ++i)
    if (ensemble.status[i] == Status::Alive && (ensemble.positions[i] - probe_center).norm2() <= r2)
      ++count;
  const double volume = 4.0 / 3.0 * kPi * probe_radius * probe_radius * probe_radius;
  return static_cast<double>(count) / (volume * static_cast<double>(n_released));
}

bool straddles_interface(const Probe& probe, const SpheroidGeometry& geom) {
  return std::abs(probe.center.norm() - geom.radius_m) < probe.radius;
}

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SPHEROID_WORKERS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1, omp_get_max_threads());
}

SimResult run_simulation(const SimConfig& config) {
  config.validate();
  SimResult result;
  const std::uint32_t n_steps = config.n_steps();
  const std::uint32_t stride = config.stride;
  const std::uint32_t n_records = n_steps / stride;
  std::vector<Counter> counters = build_counters(config, result.probes);
  const std::size_t n_series = counters.size();
  for (auto& ps : result.probes) ps.counts.assign(n_records, 0);
  result.absorbed_per_step.assign(n_steps, 0);

  const Vec3 origin = config.geom.tx_position.cartesian();
  const std::uint64_t n_particles = config.n_particles;
  result.final_ensemble = ParticleEnsemble::released_at(origin, n_particles);
  auto& ens = result.final_ensemble;

  const double r2 = config.geom.radius_m * config.geom.radius_m;
  const double sigma_out = std::sqrt(2.0 * config.medium.d_free * config.dt);
  const double sigma_in = std::sqrt(2.0 * config.medium.d_eff * config.dt);
  const bool has_interface = config.medium.d_eff != config.medium.d_free;
  const double p_abs = config.medium.k_f * config.dt;
  const bool absorbing = p_abs > 0.0;
  const double dt = config.dt;

  const int workers = resolve_workers(config.workers);

#pragma omp parallel num_threads(workers)
  {
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(n_records) * n_series, 0);
    std::vector<std::uint64_t> absorbed(n_steps, 0);

#pragma omp for schedule(static)
    for (std::int64_t ip = 0; ip < static_cast<std::int64_t>(n_particles); ++ip) {
      const auto idx = static_cast<std::uint64_t>(ip);
      const rng::ParticleStream stream(config.seed, idx);
      Vec3 pos = origin;
      bool inside = pos.norm2() < r2;
      std::uint32_t until_record = stride;
      std::size_t rec = 0;
      for (std::uint32_t s = 0; s < n_steps; ++s) {
        const auto g = stream.normals(s);
        const double sigma = inside ? sigma_in : sigma_out;
        Vec3 next{pos.x + sigma * g[0], pos.y + sigma * g[1], pos.z + sigma * g[2]};
        bool next_inside = next.norm2() < r2;
        // Both ends outside and moving away from the centre: the segment cannot
        // touch the sphere.
        if (has_interface && (next_inside != inside ||
                              (!inside && dot(pos, next - pos) < 0.0))) {
          next = handle_boundary_crossing(pos, next, config.geom, config.medium);
          next_inside = next.norm2() < r2;
        }
        pos = next;
        inside = next_inside;
        if (absorbing && inside && absorbs(stream, s, p_abs)) {
          ens.status[idx] = Status::Absorbed;
          ens.absorption_time[idx] = (s + 0.5) * dt;
          ++absorbed[s];
          break;
        }
        if (--until_record == 0) {
          until_record = stride;
          for (std::size_t k = 0; k < n_series; ++k)
            if (in_counter(counters[k], pos)) ++counts[rec * n_series + k];
          ++rec;
        }
      }
      ens.positions[idx] = pos;
    }

#pragma omp critical
    {
      for (std::size_t rec = 0; rec < n_records; ++rec)
        for (std::size_t k = 0; k < n_series; ++k)
          result.probes[k].counts[rec] += counts[rec * n_series + k];
      for (std::uint32_t s = 0; s < n_steps; ++s) result.absorbed_per_step[s] += absorbed[s];
    }
  }

  const double denom_n = n_particles > 0 ? static_cast<double>(n_particles) : 1.0;
  for (auto& ps : result.probes) {
    ps.series.values.resize(n_records);
    for (std::size_t i = 0; i < n_records; ++i)
      ps.series.values[i] = n_particles > 0
                                ? static_cast<double>(ps.counts[i]) / (ps.volume * denom_n)
                                : 0.0;
  }
  if (n_particles == 0) {
    for (auto& ps : result.probes) {
      ps.series.values.clear();
      ps.counts.clear();
    }
  }

  auto& rate = result.absorption_rate;
  rate.t0 = 0.5 * dt;
  rate.dt_sample = dt;
  rate.unit = Unit::Rate;
  rate.provenance = Provenance::Pbs;
  if (config.record_absorption && n_particles > 0) {
    rate.values.resize(n_steps);
    for (std::uint32_t s = 0; s < n_steps; ++s)
      rate.values[s] = static_cast<double>(result.absorbed_per_step[s]) / (dt * denom_n);
  }
  return result;
}

}  // namespace spheroid::pbs
