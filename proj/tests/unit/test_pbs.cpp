#include <doctest.h>

#include "approx.hpp"

#include <cmath>

#include "spheroid/pbs.hpp"

using namespace spheroid;
using namespace spheroid::pbs;

namespace {

SpheroidGeometry reference_geometry() { return {275e-6, 24000, 3.14e-15, {500e-6, kPi / 2, 0.0}}; }

SimConfig small_config(std::uint64_t n, double t_end, double k_f) {
  SimConfig c;
  c.geom = reference_geometry();
  c.medium = MediumModel::for_geometry(c.geom, 1e-9, k_f);
  c.n_particles = n;
  c.t_end = t_end;
  c.seed = 42;
  c.probes = {{"centre", {0, 0, 0}, 10e-6},
              {"boundary", {275e-6, 0, 0}, 10e-6},
              {"near_tx", {480e-6, 0, 0}, 10e-6}};
  return c;
}

}  // namespace

TEST_SUITE("pbs") {
  TEST_CASE("free step has per-axis variance 2 D dt") {
    const double d = 1e-9, dt = 0.05;
    double s1 = 0.0, s2 = 0.0;
    std::size_t n = 0;
    for (std::uint64_t p = 0; p < 100000; ++p) {
      const rng::ParticleStream stream(3, p);
      const Vec3 x = step_particle({0, 0, 0}, dt, d, stream, 0);
      for (double v : {x.x, x.y, x.z}) {
        s1 += v;
        s2 += v * v;
        ++n;
      }
    }
    const double var = s2 / n - (s1 / n) * (s1 / n);
    CHECK(var == approx(2 * d * dt).epsilon(0.01));
  }

  TEST_CASE("radial entry and exit rescale the remaining path") {
    const auto geom = reference_geometry();
    const auto m = MediumModel::for_geometry(geom, 1e-9, 0.0);
    const double R = geom.radius_m;
    const double p = 3e-6;
    const Vec3 in = handle_boundary_crossing({R + 2e-6, 0, 0}, {R - p, 0, 0}, geom, m);
    CHECK(in.x == approx(R - p * std::sqrt(m.d_eff / m.d_free)).epsilon(1e-12));
    CHECK(in.y == 0.0);
    const Vec3 out = handle_boundary_crossing({R - 1e-6, 0, 0}, {R + p, 0, 0}, geom, m);
    CHECK(out.x == approx(R + p * std::sqrt(m.d_free / m.d_eff)).epsilon(1e-12));
    // a segment that ends on the near side is untouched
    const Vec3 a{R + 5e-6, 0, 0}, b{R + 1e-6, 1e-6, 0};
    CHECK(handle_boundary_crossing(a, b, geom, m) == b);
    // inside to inside is untouched
    const Vec3 c{0, 0, 0}, e{1e-6, 2e-6, 0};
    CHECK(handle_boundary_crossing(c, e, geom, m) == e);
  }

  TEST_CASE("oblique entry keeps direction and rescales length after the hit") {
    const auto geom = reference_geometry();
    const auto m = MediumModel::for_geometry(geom, 1e-9, 0.0);
    const double R = geom.radius_m;
    const Vec3 start{R + 1e-6, 10e-6, 0}, end{R - 4e-6, 12e-6, 1e-6};
    const Vec3 got = handle_boundary_crossing(start, end, geom, m);
    const Vec3 d = end - start;
    // got = hit + s (1 - t) d with hit on the sphere
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      ((start + mid * d).norm() > R ? lo : hi) = mid;
    }
    const double t = lo;
    const Vec3 want = (start + t * d) + (std::sqrt(m.d_eff / m.d_free) * (1 - t)) * d;
    CHECK((got - want).norm() < 1e-15);
  }

  TEST_CASE("no interface when D_eff equals D") {
    auto geom = reference_geometry();
    geom.n_cells = 0;
    const auto m = MediumModel::for_geometry(geom, 1e-9, 0.0);
    const double R = geom.radius_m;
    const Vec3 end{R - 3e-6, 0, 0};
    CHECK(handle_boundary_crossing({R + 2e-6, 0, 0}, end, geom, m) == end);
  }

  TEST_CASE("static interior ensemble decays geometrically") {
    const auto geom = reference_geometry();
    for (double p : {0.0005, 0.005}) {
      const double dt = 0.05;
      const double k_f = p / dt;
      const auto m = MediumModel::for_geometry(geom, 1e-9, k_f);
      auto ens = ParticleEnsemble::released_at({0, 0, 0}, 200000);
      const std::uint32_t steps = 200;
      std::uint64_t total = 0;
      for (std::uint32_t s = 0; s < steps; ++s) total += apply_absorption(ens, dt, m, geom, 11, s);
      const double n = 200000.0;
      const double q = std::pow(1 - p, steps);
      CAPTURE(p);
      CHECK(total == ens.absorbed_count());
      CHECK(std::abs(ens.alive_count() / n - q) < 5 * std::sqrt(q * (1 - q) / n));
    }
  }

  TEST_CASE("outside particles are never absorbed") {
    const auto geom = reference_geometry();
    const auto m = MediumModel::for_geometry(geom, 1e-9, 1.0);
    auto ens = ParticleEnsemble::released_at(geom.tx_position.cartesian(), 1000);
    for (std::uint32_t s = 0; s < 20; ++s) CHECK(apply_absorption(ens, 0.05, m, geom, 1, s) == 0);
  }

  TEST_CASE("concentration estimate counts alive particles in the ball") {
    auto ens = ParticleEnsemble::released_at({0, 0, 0}, 10);
    ens.positions[9] = {1.0, 0, 0};
    ens.status[0] = Status::Absorbed;
    const double r = 1e-6;
    const double v = 4.0 / 3.0 * kPi * r * r * r;
    CHECK(estimate_concentration(ens, {0, 0, 0}, r, 10) == approx(8.0 / (10 * v)));
    CHECK(estimate_concentration(ens, {0, 0, 0}, r, 0) == 0.0);
    CHECK_THROWS_AS(estimate_concentration(ens, {0, 0, 0}, 0.0, 10), std::invalid_argument);
  }

  TEST_CASE("boundary probes are split into two halves") {
    const auto geom = reference_geometry();
    CHECK(straddles_interface({"b", {275e-6, 0, 0}, 10e-6}, geom));
    CHECK_FALSE(straddles_interface({"c", {0, 0, 0}, 10e-6}, geom));
    auto c = small_config(10, 1.0, 0.0);
    const auto r = run_simulation(c);
    REQUIRE(r.probes.size() == 4);
    CHECK(r.probes[1].id == "boundary:in");
    CHECK(r.probes[2].id == "boundary:out");
    CHECK(r.probes[1].volume == approx(r.probes[0].volume / 2));
  }

  TEST_CASE("zero particles gives empty series") {
    auto c = small_config(0, 1.0, 0.01);
    const auto r = run_simulation(c);
    CHECK(r.final_ensemble.size() == 0);
    CHECK(r.absorption_rate.empty());
    for (const auto& p : r.probes) CHECK(p.series.empty());
  }

  TEST_CASE("results do not depend on the worker count") {
    auto c = small_config(3000, 40.0, 0.5);
    c.workers = 1;
    const auto a = run_simulation(c);
    c.workers = 3;
    const auto b = run_simulation(c);
    CHECK(a.absorbed_per_step == b.absorbed_per_step);
    REQUIRE(a.probes.size() == b.probes.size());
    for (std::size_t i = 0; i < a.probes.size(); ++i) CHECK(a.probes[i].counts == b.probes[i].counts);
    CHECK(a.final_ensemble.positions == b.final_ensemble.positions);
  }

  TEST_CASE("every particle is either alive or absorbed exactly once") {
    auto c = small_config(2000, 60.0, 1.0);
    const auto r = run_simulation(c);
    std::uint64_t sum = 0;
    for (auto n : r.absorbed_per_step) sum += n;
    CHECK(sum == r.final_ensemble.absorbed_count());
    CHECK(r.final_ensemble.alive_count() + r.final_ensemble.absorbed_count() == 2000);
    CHECK(sum > 0);
    double integral = 0.0;
    for (double v : r.absorption_rate.values) integral += v * r.absorption_rate.dt_sample;
    CHECK(integral == approx(sum / 2000.0));
  }

  TEST_CASE("stride thins probe samples") {
    auto c = small_config(100, 2.0, 0.0);
    c.stride = 4;
    const auto r = run_simulation(c);
    CHECK(r.probes[0].series.size() == 10);
    CHECK(r.probes[0].series.dt_sample == approx(0.2));
    CHECK(r.probes[0].series.t0 == approx(0.2));
  }

  TEST_CASE("validation lists every violated field") {
    auto c = small_config(10, -1.0, 10.0);
    c.dt = 0.05;
    c.stride = 0;
    c.probes.push_back({"big", {0, 0, 0}, 100e-6});
    try {
      c.validate();
      FAIL("expected invalid_argument");
    } catch (const std::invalid_argument& e) {
      const std::string msg = e.what();
      CHECK(msg.find("pbs.t_end") != std::string::npos);
      CHECK(msg.find("pbs.stride") != std::string::npos);
      CHECK(msg.find("k_f * dt") != std::string::npos);
      CHECK(msg.find("probes.big.radius") != std::string::npos);
    }
    auto d = small_config(10, 1.0, 0.0);
    d.dt = 10.0;
    CHECK_THROWS_WITH_AS(d.validate(), doctest::Contains("R_s / 10"), std::invalid_argument);
  }

  TEST_CASE("worker resolution prefers the explicit request") {
    CHECK(resolve_workers(3) == 3);
    CHECK(resolve_workers(0) >= 1);
  }
}
