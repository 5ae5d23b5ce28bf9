#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace spheroid {

enum class Unit { Concentration, Rate, Count, Fraction };
enum class Provenance { Analytic, Pbs };

std::string_view to_string(Unit u);
std::string_view to_string(Provenance p);

/// Uniformly sampled real signal: value i is taken at t0 + i * dt_sample.
struct TimeSeries {
  double t0 = 0.0;
  double dt_sample = 1.0;
  std::vector<double> values;
  Unit unit = Unit::Concentration;
  Provenance provenance = Provenance::Analytic;

  [[nodiscard]] std::size_t size() const { return values.size(); }
  [[nodiscard]] bool empty() const { return values.empty(); }
  [[nodiscard]] double time(std::size_t i) const { return t0 + static_cast<double>(i) * dt_sample; }
  [[nodiscard]] std::vector<double> times() const;
  /// Same t0, dt and length (relative tolerance on the time axis).
  [[nodiscard]] bool same_grid(const TimeSeries& other) const;
};

/// Uniform time grid t_i = t0 + i * dt, i < count.
struct TimeGrid {
  double t0 = 0.0;
  double dt = 1.0;
  std::size_t count = 0;

  [[nodiscard]] double at(std::size_t i) const { return t0 + static_cast<double>(i) * dt; }
  static TimeGrid from_range(double t_first, double t_last, double dt);
};

}  // namespace spheroid
