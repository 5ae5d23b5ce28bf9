#include "spheroid/signal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace spheroid::signal {

namespace {

double shell_volume(double a, double b) { return 4.0 / 3.0 * kPi * (b * b * b - a * a * a); }

void check_radial_grid(const std::vector<double>& radii, double radius) {
  const std::size_t n = radii.size();
  if (n < 3 || n % 2 == 0)
    throw std::invalid_argument("radial grid needs an odd number (>= 3) of nodes");
  const double h = radius / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i)
    if (std::abs(radii[i] - h * static_cast<double>(i)) > 1e-9 * radius)
      throw std::invalid_argument("radial grid must be uniform on [0, R_s]");
}

// Volume above threshold inside [a, b] given c at both ends, linear in between.
double shell_above(double a, double b, double ca, double cb, double threshold) {
  const bool ia = ca > threshold;
  const bool ib = cb > threshold;
  if (ia && ib) return shell_volume(a, b);
  if (!ia && !ib) return 0.0;
  const double rc = a + (ca - threshold) / (ca - cb) * (b - a);
  return ia ? shell_volume(a, rc) : shell_volume(rc, b);
}

}  // namespace

std::vector<double> RadialProfile::uniform_radii(double radius, std::size_t n_intervals) {
  if (n_intervals < 2 || n_intervals % 2 != 0)
    throw std::invalid_argument("n_intervals must be even and >= 2");
  std::vector<double> r(n_intervals + 1);
  for (std::size_t i = 0; i <= n_intervals; ++i)
    r[i] = radius * static_cast<double>(i) / static_cast<double>(n_intervals);
  r.back() = radius;
  return r;
}

RadialProfile c_E_from_interior(std::span<const TimeSeries> interior, std::span<const double> radii,
                                double k_f, double porosity) {
  if (interior.size() != radii.size())
    throw std::invalid_argument("one interior series per radius is required");
  if (!(porosity < 1.0)) throw std::invalid_argument("porosity must be < 1 to hold cells");
  RadialProfile out;
  out.radii.assign(radii.begin(), radii.end());
  if (interior.empty()) return out;
  const TimeSeries& first = interior.front();
  for (const auto& s : interior)
    if (!s.same_grid(first)) throw std::invalid_argument("interior series grids differ");
  out.times = {first.t0, first.dt_sample, first.size()};
  const std::size_t nr = radii.size();
  const std::size_t nt = first.size();
  out.values.assign(nt * nr, 0.0);
  const double scale = k_f / (1.0 - porosity);
  for (std::size_t ir = 0; ir < nr; ++ir) {
    const auto& c = interior[ir].values;
    double acc = 0.5 * first.t0 * c[0];
    out.values[ir] = scale * acc;
    for (std::size_t it = 1; it < nt; ++it) {
      acc += 0.5 * first.dt_sample * (c[it - 1] + c[it]);
      out.values[it * nr + ir] = scale * acc;
    }
  }
  return out;
}

TimeSeries received_total_E(const RadialProfile& c_E, const SpheroidGeometry& geom) {
  check_radial_grid(c_E.radii, geom.radius_m);
  const std::size_t nr = c_E.radii.size();
  if (c_E.values.size() != nr * c_E.times.count)
    throw std::invalid_argument("profile values do not match its grid");
  const double h = geom.radius_m / static_cast<double>(nr - 1);
  const double density = geom.cell_volume_m3 * static_cast<double>(geom.n_cells) / geom.volume();
  TimeSeries out{c_E.times.t0, c_E.times.dt, {}, Unit::Count, Provenance::Analytic};
  out.values.resize(c_E.times.count);
  for (std::size_t it = 0; it < c_E.times.count; ++it) {
    double s = 0.0;
    for (std::size_t ir = 0; ir < nr; ++ir) {
      const double w = (ir == 0 || ir == nr - 1) ? 1.0 : (ir % 2 == 1 ? 4.0 : 2.0);
      const double r = c_E.radii[ir];
      s += w * 4.0 * kPi * r * r * c_E.at(it, ir);
    }
    out.values[it] = s * h / 3.0 * density;
  }
  return out;
}

TimeSeries cumulative_count(const TimeSeries& rate) {
  TimeSeries out{rate.t0 + 0.5 * rate.dt_sample, rate.dt_sample, {}, Unit::Count,
                 rate.provenance};
  out.values.resize(rate.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < rate.size(); ++i) {
    acc += rate.values[i] * rate.dt_sample;
    out.values[i] = acc;
  }
  return out;
}

TimeSeries generation_rate(const TimeSeries& count) {
  const std::size_t n = count.size();
  if (n < 3) throw std::invalid_argument("generation_rate needs at least 3 samples");
  TimeSeries out{count.t0, count.dt_sample, {}, Unit::Rate, count.provenance};
  out.values.resize(n);
  const auto& v = count.values;
  const double h = count.dt_sample;
  out.values[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
  for (std::size_t i = 1; i + 1 < n; ++i) out.values[i] = (v[i + 1] - v[i - 1]) / (2.0 * h);
  out.values[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h);
  return out;
}

TimeSeries rebin(const TimeSeries& series, std::size_t factor) {
  if (factor == 0) throw std::invalid_argument("rebin factor must be >= 1");
  TimeSeries out = series;
  out.t0 = series.t0 + 0.5 * static_cast<double>(factor - 1) * series.dt_sample;
  out.dt_sample = series.dt_sample * static_cast<double>(factor);
  const std::size_t n = series.size() / factor;
  out.values.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < factor; ++k) s += series.values[i * factor + k];
    out.values[i] = s / static_cast<double>(factor);
  }
  return out;
}

TimeSeries threshold_activation(const RadialProfile& c_E, double threshold,
                                const SpheroidGeometry& geom) {
  if (threshold < 0.0) throw std::invalid_argument("threshold must be >= 0");
  const std::size_t nr = c_E.radii.size();
  if (nr < 2) throw std::invalid_argument("radial grid needs at least 2 nodes");
  if (std::abs(c_E.radii.front()) > 1e-12 * geom.radius_m ||
      std::abs(c_E.radii.back() - geom.radius_m) > 1e-9 * geom.radius_m)
    throw std::invalid_argument("radial grid must span [0, R_s]");
  TimeSeries out{c_E.times.t0, c_E.times.dt, {}, Unit::Fraction, Provenance::Analytic};
  out.values.resize(c_E.times.count);
  const double vs = geom.volume();
  for (std::size_t it = 0; it < c_E.times.count; ++it) {
    double v = 0.0;
    for (std::size_t ir = 0; ir + 1 < nr; ++ir)
      v += shell_above(c_E.radii[ir], c_E.radii[ir + 1], c_E.at(it, ir), c_E.at(it, ir + 1),
                       threshold);
    out.values[it] = v / vs;
  }
  return out;
}

double threshold_activation(const std::function<double(double)>& c_E, double threshold,
                            const SpheroidGeometry& geom, std::size_t n_intervals) {
  if (threshold < 0.0) throw std::invalid_argument("threshold must be >= 0");
  if (n_intervals == 0) throw std::invalid_argument("n_intervals must be >= 1");
  const double R = geom.radius_m;
  const double h = R / static_cast<double>(n_intervals);
  double v = 0.0;
  double a = 0.0;
  bool ia = c_E(a) > threshold;
  for (std::size_t i = 1; i <= n_intervals; ++i) {
    const double b = i == n_intervals ? R : h * static_cast<double>(i);
    const bool ib = c_E(b) > threshold;
    if (ia && ib) {
      v += shell_volume(a, b);
    } else if (ia != ib) {
      double lo = a;
      double hi = b;
      for (int k = 0; k < 80 && hi - lo > 1e-15 * R; ++k) {
        const double mid = 0.5 * (lo + hi);
        if ((c_E(mid) > threshold) == ia) lo = mid;
        else hi = mid;
      }
      const double rc = 0.5 * (lo + hi);
      v += ia ? shell_volume(a, rc) : shell_volume(rc, b);
    }
    a = b;
    ia = ib;
  }
  return v / geom.volume();
}

PeakMetrics peak_metrics(const TimeSeries& series) {
  if (series.empty()) throw std::invalid_argument("peak_metrics needs a non-empty series");
  const auto& v = series.values;
  const auto it = std::max_element(v.begin(), v.end());
  if (!(*it > 0.0)) throw NoPeakError("series has no positive peak");
  const auto ip = static_cast<std::size_t>(it - v.begin());
  PeakMetrics m;
  m.peak_value = *it;
  m.peak_time = series.time(ip);
  const double half = 0.5 * m.peak_value;

  double left = series.time(0);
  bool found_left = false;
  for (std::size_t i = ip; i > 0; --i) {
    if (v[i - 1] < half) {
      const double f = (v[i] - half) / (v[i] - v[i - 1]);
      left = series.time(i) - f * series.dt_sample;
      found_left = true;
      break;
    }
  }
  double right = series.time(v.size() - 1);
  bool found_right = false;
  for (std::size_t i = ip; i + 1 < v.size(); ++i) {
    if (v[i + 1] < half) {
      const double f = (v[i] - half) / (v[i] - v[i + 1]);
      right = series.time(i) + f * series.dt_sample;
      found_right = true;
      break;
    }
  }
  m.fwhm = right - left;
  m.clipped = !(found_left && found_right);
  return m;
}

ReceiverComparison compare_receivers(const TimeSeries& spheroid_rate,
                                     const TimeSeries& transparent_rate) {
  if (!spheroid_rate.same_grid(transparent_rate))
    throw std::invalid_argument("receiver series are on different time grids");
  ReceiverComparison c;
  c.spheroid = peak_metrics(spheroid_rate);
  c.transparent = peak_metrics(transparent_rate);
  c.amplification = c.spheroid.peak_value / c.transparent.peak_value;
  c.peak_delay = c.spheroid.peak_time - c.transparent.peak_time;
  c.width_ratio = c.spheroid.fwhm / c.transparent.fwhm;
  return c;
}

}  // namespace spheroid::signal
