#include <doctest.h>

#include "approx.hpp"

#include <cmath>

#include "spheroid/model.hpp"

using namespace spheroid;

namespace {
SpheroidGeometry reference_geometry() { return {275e-6, 24000, 3.14e-15, {500e-6, kPi / 2, 0.0}}; }
}  // namespace

TEST_SUITE("model") {
  TEST_CASE("porosity of the reference spheroid") {
    const double eps = porosity(24000, 3.14e-15, 275e-6);
    // 1 - 24000 * 3.14e-15 / (4/3 pi 275e-6^3)
    CHECK(eps == approx(0.1349241284).epsilon(1e-9));
    CHECK(porosity(0, 3.14e-15, 275e-6) == 1.0);
    CHECK_THROWS_AS(porosity(100000, 3.14e-15, 275e-6), std::invalid_argument);
    CHECK_THROWS_AS(porosity(10, 1e-15, 0.0), std::invalid_argument);
  }

  TEST_CASE("tortuosity, effective diffusion and jump") {
    CHECK(tortuosity(1.0) == 1.0);
    CHECK(tortuosity(0.25) == approx(2.0));
    CHECK_THROWS_AS(tortuosity(0.0), std::invalid_argument);
    CHECK_THROWS_AS(tortuosity(1.5), std::invalid_argument);
    CHECK(effective_diffusion(1e-9, 1.0) == 1e-9);
    CHECK(effective_diffusion(1e-9, 0.25) == approx(0.125e-9));
    CHECK(boundary_jump(1e-9, 1e-9) == 1.0);
    CHECK(boundary_jump(1e-9, 0.25e-9) == approx(2.0));
    CHECK_THROWS_AS(boundary_jump(1e-9, 2e-9), std::invalid_argument);
    CHECK_THROWS_AS(effective_diffusion(-1.0, 0.5), std::invalid_argument);
  }

  TEST_CASE("jump constant is eps^-3/4 and independent of D") {
    for (double eps : {0.05, 0.13, 0.5, 0.9}) {
      for (double d : {1e-10, 1e-9, 5e-9}) {
        const auto m = MediumModel::from_porosity(d, eps, 0.0);
        CHECK(m.jump_k == approx(std::pow(eps, -0.75)).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("medium for the reference geometry") {
    const auto m = MediumModel::for_geometry(reference_geometry(), 1e-9, 0.01);
    CHECK(m.porosity == approx(0.1349241284).epsilon(1e-9));
    CHECK(m.jump_k == approx(4.4919).epsilon(1e-4));
    CHECK(m.d_eff == approx(1e-9 * std::pow(m.porosity, 1.5)));
    CHECK(m.sink_at(3.0) == std::complex<double>(-0.01, 0.0));
    const auto t = m.transparent();
    CHECK(t.jump_k == 1.0);
    CHECK(t.d_eff == t.d_free);
    CHECK(t.k_f == 0.01);
    CHECK_THROWS_AS(MediumModel::from_porosity(1e-9, 0.5, -1.0), std::invalid_argument);
  }

  TEST_CASE("jump constant grows as cells are added") {
    double prev = 0.0;
    for (std::int64_t n = 15000; n <= 25000; n += 1000) {
      auto g = reference_geometry();
      g.n_cells = n;
      const auto m = MediumModel::for_geometry(g, 1e-9, 0.0);
      CHECK(m.jump_k > prev);
      prev = m.jump_k;
    }
  }

  TEST_CASE("geometry validation names the failing constraint") {
    auto g = reference_geometry();
    CHECK_NOTHROW(g.validate());
    g.n_cells = 1000000;
    CHECK_THROWS_WITH_AS(g.validate(), doctest::Contains("porosity constraint"),
                         std::invalid_argument);
    g = reference_geometry();
    g.tx_position.r = 100e-6;
    CHECK_THROWS_WITH_AS(g.validate(), doctest::Contains("tx_position"), std::invalid_argument);
  }

  TEST_CASE("spherical and Cartesian coordinates round-trip") {
    const SphericalPoint p{2.0, 0.7, -1.2};
    const auto q = SphericalPoint::from_cartesian(p.cartesian());
    CHECK(q.r == approx(p.r));
    CHECK(q.theta == approx(p.theta));
    CHECK(q.phi == approx(p.phi));
    CHECK(cos_angle_between(p, p) == approx(1.0));
    CHECK(cos_angle_between({1, 0, 0}, {1, kPi, 0}) == approx(-1.0));
  }
}
