#include <doctest.h>

#include "approx.hpp"

#include <cmath>
#include <vector>

#include "spheroid/analytic.hpp"
#include "spheroid/signal.hpp"

using namespace spheroid;
using namespace spheroid::signal;

namespace {

SpheroidGeometry reference_geometry() { return {275e-6, 24000, 3.14e-15, {500e-6, kPi / 2, 0.0}}; }

TimeSeries sampled(double t0, double dt, std::size_t n, auto f) {
  TimeSeries s{t0, dt, {}, Unit::Rate, Provenance::Analytic};
  for (std::size_t i = 0; i < n; ++i) s.values.push_back(f(s.time(i)));
  return s;
}

RadialProfile constant_profile(const std::vector<double>& radii, std::size_t nt, auto f) {
  RadialProfile p;
  p.radii = radii;
  p.times = {1.0, 1.0, nt};
  for (std::size_t it = 0; it < nt; ++it)
    for (double r : radii) p.values.push_back(f(r, p.times.at(it)));
  return p;
}

}  // namespace

TEST_SUITE("signal") {
  TEST_CASE("triangle pulse has a full width of two") {
    const auto s = sampled(0.0, 0.01, 1001, [](double t) { return std::max(0.0, 1.0 - std::abs(t - 5.0) / 2.0); });
    const auto m = peak_metrics(s);
    CHECK(m.peak_value == approx(1.0));
    CHECK(m.peak_time == approx(5.0));
    CHECK(m.fwhm == approx(2.0).epsilon(1e-9));
    CHECK_FALSE(m.clipped);
  }

  TEST_CASE("Gaussian full width is 2 sqrt(2 ln 2) sigma") {
    const double sigma = 3.0;
    const auto s = sampled(0.0, 0.01, 4001, [&](double t) {
      return std::exp(-0.5 * (t - 20.0) * (t - 20.0) / (sigma * sigma));
    });
    const auto m = peak_metrics(s);
    CHECK(m.fwhm == approx(2.0 * std::sqrt(2.0 * std::log(2.0)) * sigma).epsilon(1e-5));
  }

  TEST_CASE("free-space kernel peaks at d^2 / (6 D)") {
    const double d = 100e-6, D = 1e-9;
    const SphericalPoint tx{500e-6, kPi / 2, 0.0};
    const Vec3 p = tx.cartesian() + Vec3{0, d, 0};
    const auto s = sampled(0.001, 0.001, 10000,
                           [&](double t) { return analytic::free_space_cgf(p, t, D, tx); });
    const auto m = peak_metrics(s);
    CHECK(m.peak_time == approx(d * d / (6 * D)).epsilon(1e-3));
  }

  TEST_CASE("clipped and flat series") {
    const auto rising = sampled(0.0, 1.0, 10, [](double t) { return t + 1.0; });
    CHECK(peak_metrics(rising).clipped);
    const auto zero = sampled(0.0, 1.0, 10, [](double) { return 0.0; });
    CHECK_THROWS_AS(peak_metrics(zero), NoPeakError);
    CHECK_THROWS_AS(peak_metrics(TimeSeries{}), std::invalid_argument);
  }

  TEST_CASE("uniform c_E integrates to the cell volume times c_E") {
    const auto geom = reference_geometry();
    const auto radii = RadialProfile::uniform_radii(geom.radius_m, 20);
    const auto prof = constant_profile(radii, 3, [](double, double t) { return 2.0 * t; });
    const auto total = received_total_E(prof, geom);
    const double vc = geom.n_cells * geom.cell_volume_m3;
    for (std::size_t i = 0; i < 3; ++i)
      CHECK(total.values[i] == approx(2.0 * prof.times.at(i) * vc).epsilon(1e-12));
  }

  TEST_CASE("Simpson is exact for a linear radial profile") {
    const auto geom = reference_geometry();
    const double R = geom.radius_m;
    const auto radii = RadialProfile::uniform_radii(R, 4);
    const auto prof = constant_profile(radii, 1, [&](double r, double) { return 1.0 - r / R; });
    // cubic integrand: int 4 pi r^2 (1 - r/R) dr = pi R^3 / 3
    const double want = kPi * R * R * R / 3.0 * geom.n_cells * geom.cell_volume_m3 / geom.volume();
    CHECK(received_total_E(prof, geom).values[0] == approx(want).epsilon(1e-12));
  }

  TEST_CASE("radial grid requirements") {
    const auto geom = reference_geometry();
    CHECK_THROWS_AS(RadialProfile::uniform_radii(1.0, 3), std::invalid_argument);
    auto prof = constant_profile({0.0, 100e-6, 275e-6}, 1, [](double, double) { return 1.0; });
    CHECK_THROWS_AS(received_total_E(prof, geom), std::invalid_argument);
  }

  TEST_CASE("step profile activates an eighth of the volume") {
    const auto geom = reference_geometry();
    const double R = geom.radius_m;
    auto step = [&](double r) { return r < R / 2 ? 1.0 : 0.0; };
    CHECK(threshold_activation(step, 0.5, geom) == approx(0.125).epsilon(1e-9));
    CHECK(threshold_activation(step, 2.0, geom) == 0.0);
    CHECK(threshold_activation([](double) { return 1.0; }, 0.5, geom) == approx(1.0));
    // linear profile 1 - r/R crosses 0.5 at R/2 on the grid as well
    const auto radii = RadialProfile::uniform_radii(R, 10);
    const auto prof = constant_profile(radii, 2, [&](double r, double) { return 1.0 - r / R; });
    const auto frac = threshold_activation(prof, 0.5, geom);
    CHECK(frac.values[0] == approx(0.125).epsilon(1e-12));
    CHECK(frac.unit == Unit::Fraction);
  }

  TEST_CASE("c_E is the scaled running integral of c_s") {
    const std::vector<double> radii{0.0, 1e-4};
    const std::vector<TimeSeries> interior{
        sampled(0.0, 0.5, 5, [](double) { return 1.0; }),
        sampled(0.0, 0.5, 5, [](double t) { return t; })};
    const auto p = c_E_from_interior(interior, radii, 0.2, 0.5);
    CHECK(p.at(4, 0) == approx(0.4 * 2.0));
    CHECK(p.at(4, 1) == approx(0.4 * 2.0));  // trapezoid exact for t
    CHECK_THROWS_AS(c_E_from_interior(interior, radii, 0.2, 1.0), std::invalid_argument);
  }

  TEST_CASE("rebinning averages groups and recentres times") {
    const auto s = sampled(0.025, 0.05, 41, [](double t) { return t; });
    const auto r = rebin(s, 20);
    REQUIRE(r.size() == 2);
    CHECK(r.dt_sample == approx(1.0));
    CHECK(r.t0 == approx(0.5));
    CHECK(r.values[0] == approx(0.5));
    CHECK(r.values[1] == approx(1.5));
    CHECK_THROWS_AS(rebin(s, 0), std::invalid_argument);
  }

  TEST_CASE("generation rate inverts the cumulative count") {
    const auto rate = sampled(0.05, 0.1, 400, [](double t) { return t * std::exp(-t / 5.0); });
    const auto count = cumulative_count(rate);
    CHECK(count.t0 == approx(0.1));
    const auto back = generation_rate(count);
    for (std::size_t i = 1; i + 1 < back.size(); ++i) {
      // the derivative of a running midpoint sum sits between neighbouring samples
      const double want = 0.5 * (rate.values[i] + rate.values[i + 1]);
      CHECK(back.values[i] == approx(want).epsilon(1e-9));
    }
    const auto quad = sampled(0.0, 0.5, 5, [](double t) { return t * t; });
    const auto d = generation_rate(quad);
    for (std::size_t i = 0; i < 5; ++i) CHECK(d.values[i] == approx(2 * quad.time(i)));
    CHECK_THROWS_AS(generation_rate(sampled(0.0, 1.0, 2, [](double t) { return t; })),
                    std::invalid_argument);
  }

  TEST_CASE("comparison of a curve with itself and with a scaled copy") {
    const auto s = sampled(0.5, 0.5, 200, [](double t) { return t * std::exp(-t / 10.0); });
    const auto same = compare_receivers(s, s);
    CHECK(same.amplification == 1.0);
    CHECK(same.peak_delay == 0.0);
    CHECK(same.width_ratio == 1.0);
    auto scaled = s;
    for (double& v : scaled.values) v *= 3.0;
    const auto c = compare_receivers(scaled, s);
    CHECK(c.amplification == approx(3.0));
    CHECK(c.width_ratio == approx(1.0));
    const auto other = sampled(0.5, 1.0, 200, [](double t) { return t; });
    CHECK_THROWS_AS(compare_receivers(s, other), std::invalid_argument);
  }
}
