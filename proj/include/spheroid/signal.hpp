#pragma once

/// @file signal.hpp
/// @brief Receiver-level observables built from concentration profiles and rates.

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "spheroid/model.hpp"
#include "spheroid/timeseries.hpp"

namespace spheroid::signal {

class NoPeakError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Radially symmetric field sampled on radii x times; row-major in time.
struct RadialProfile {
  std::vector<double> radii;
  TimeGrid times;
  std::vector<double> values;

  [[nodiscard]] double at(std::size_t it, std::size_t ir) const {
    return values[it * radii.size() + ir];
  }
  /// n_intervals + 1 equally spaced radii on [0, radius]; n_intervals must be even.
  static std::vector<double> uniform_radii(double radius, std::size_t n_intervals);
};

/// c_E(r, t) = k_f / (1 - eps) * int_0^t c_s(r, t') dt', i.e. generated E per
/// unit cell volume, by the trapezoidal rule from c_s = 0 at t = 0.
/// `interior[i]` holds the angular mean of c_s at `radii[i]`.
RadialProfile c_E_from_interior(std::span<const TimeSeries> interior, std::span<const double> radii,
                                double k_f, double porosity);

/// Total generated E: int_0^R 4 pi r^2 c_E V_c N_c / V_s dr (composite Simpson).
TimeSeries received_total_E(const RadialProfile& c_E, const SpheroidGeometry& geom);

/// Running integral of a rate sampled at bin centres; value i is at the end of bin i.
TimeSeries cumulative_count(const TimeSeries& rate);

TimeSeries generation_rate(const TimeSeries& count);

/// Means over consecutive groups of `factor` samples (a trailing partial group
/// is dropped); sample times move to the group centres.
TimeSeries rebin(const TimeSeries& series, std::size_t factor);

/// Volume fraction of the spheroid where c_E > threshold, per time sample.
TimeSeries threshold_activation(const RadialProfile& c_E, double threshold,
                                const SpheroidGeometry& geom);
/// Same for a continuous profile c_E(r); crossings are located by bisection.
double threshold_activation(const std::function<double(double)>& c_E, double threshold,
                            const SpheroidGeometry& geom, std::size_t n_intervals = 256);

struct PeakMetrics {
  double peak_value = 0.0;
  double peak_time = 0.0;
  double fwhm = 0.0;
  /// Half maximum not reached on at least one side inside the series.
  bool clipped = false;
};

PeakMetrics peak_metrics(const TimeSeries& series);

struct ReceiverComparison {
  double amplification = 0.0;
  double peak_delay = 0.0;
  double width_ratio = 0.0;
  PeakMetrics spheroid;
  PeakMetrics transparent;
};

ReceiverComparison compare_receivers(const TimeSeries& spheroid_rate,
                                     const TimeSeries& transparent_rate);

}  // namespace spheroid::signal
