#include "spheroid/timeseries.hpp"

#include <cmath>
#include <stdexcept>

namespace spheroid {

std::string_view to_string(Unit u) {
  switch (u) {
    case Unit::Concentration: return "m^-3";
    case Unit::Rate: return "s^-1";
    case Unit::Count: return "count";
    case Unit::Fraction: return "fraction";
  }
  return "?";
}

std::string_view to_string(Provenance p) {
  return p == Provenance::Analytic ? "analytic" : "pbs";
}

std::vector<double> TimeSeries::times() const {
  std::vector<double> t(values.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = time(i);
  return t;
}

bool TimeSeries::same_grid(const TimeSeries& other) const {
  if (values.size() != other.values.size()) return false;
  const double scale = std::max(std::abs(dt_sample), std::abs(other.dt_sample));
  return std::abs(dt_sample - other.dt_sample) <= 1e-9 * scale &&
         std::abs(t0 - other.t0) <= 1e-9 * std::max(scale, std::abs(t0));
}

TimeGrid TimeGrid::from_range(double t_first, double t_last, double dt) {
  if (!(dt > 0.0) || !(t_last >= t_first)) {
    throw std::invalid_argument("time grid: need dt > 0 and t_last >= t_first");
  }
  const auto n = static_cast<std::size_t>(std::floor((t_last - t_first) / dt + 1e-9)) + 1;
  return {t_first, dt, n};
}

}  // namespace spheroid
