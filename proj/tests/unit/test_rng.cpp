#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "spheroid/rng.hpp"

using namespace spheroid::rng;

TEST_SUITE("rng") {
  TEST_CASE("Philox4x32-10 known-answer vectors") {
    using C = Philox4x32::Counter;
    CHECK(Philox4x32::generate({0, 0, 0, 0}, {0, 0}) ==
          C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(Philox4x32::generate({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                               {0xffffffff, 0xffffffff}) ==
          C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(Philox4x32::generate({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                               {0xa4093822, 0x299f31d0}) ==
          C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
  }

  TEST_CASE("streams are pure functions of seed, particle and step") {
    const ParticleStream a(7, 123), b(7, 123), c(8, 123), d(7, 124);
    CHECK(a.normals(5) == b.normals(5));
    CHECK(a.normals(5) != a.normals(6));
    CHECK(a.normals(5) != c.normals(5));
    CHECK(a.normals(5) != d.normals(5));
    CHECK(a.uniforms(5, Purpose::Displacement) != a.uniforms(5, Purpose::Absorption));
    // high particle bits reach the counter
    const ParticleStream hi(7, 123 + (std::uint64_t{1} << 32));
    CHECK(a.normals(5) != hi.normals(5));
  }

  TEST_CASE("uniforms lie strictly inside (0, 1) with mean 1/2") {
    const ParticleStream s(1, 2);
    double sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
      const double u = s.uniform(static_cast<std::uint32_t>(i), Purpose::Absorption);
      REQUIRE(u > 0.0);
      REQUIRE(u < 1.0);
      sum += u;
    }
    // sd of the mean is sqrt(1/12 / n) ~ 9.1e-4
    CHECK(std::abs(sum / n - 0.5) < 5 * 9.2e-4);
  }

  TEST_CASE("normal moments and tail probabilities") {
    double m1 = 0, m2 = 0, m4 = 0;
    std::size_t beyond2 = 0, beyond3 = 0;
    const std::size_t steps = 200000;
    std::size_t n = 0;
    for (std::uint64_t p = 0; p < 4; ++p) {
      const ParticleStream s(99, p);
      for (std::uint32_t k = 0; k < steps / 4; ++k) {
        for (double z : s.normals(k)) {
          m1 += z;
          m2 += z * z;
          m4 += z * z * z * z;
          beyond2 += std::abs(z) > 2.0;
          beyond3 += std::abs(z) > 3.0;
          ++n;
        }
      }
    }
    const double N = static_cast<double>(n);
    CHECK(std::abs(m1 / N) < 5 / std::sqrt(N));
    CHECK(std::abs(m2 / N - 1.0) < 5 * std::sqrt(2.0 / N));
    CHECK(std::abs(m4 / N - 3.0) < 5 * std::sqrt(96.0 / N));
    // P(|z| > 2) = 0.0455003, P(|z| > 3) = 0.0026998
    const double p2 = 0.0455003, p3 = 0.0026998;
    CHECK(std::abs(beyond2 / N - p2) < 5 * std::sqrt(p2 * (1 - p2) / N));
    CHECK(std::abs(beyond3 / N - p3) < 5 * std::sqrt(p3 * (1 - p3) / N));
  }

  TEST_CASE("normal CDF matches on a grid of quantiles") {
    const std::vector<double> q = {-2.5, -1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.5};
    std::vector<std::size_t> below(q.size(), 0);
    std::size_t n = 0;
    const ParticleStream s(2024, 0);
    for (std::uint32_t k = 0; k < 100000; ++k) {
      for (double z : s.normals(k)) {
        for (std::size_t i = 0; i < q.size(); ++i) below[i] += z < q[i];
        ++n;
      }
    }
    for (std::size_t i = 0; i < q.size(); ++i) {
      const double p = 0.5 * std::erfc(-q[i] / std::sqrt(2.0));
      CAPTURE(q[i]);
      CHECK(std::abs(static_cast<double>(below[i]) / n - p) < 5 * std::sqrt(p * (1 - p) / n));
    }
  }

  TEST_CASE("components of one draw are uncorrelated") {
    double sxy = 0, syz = 0;
    const ParticleStream s(5, 5);
    const int n = 100000;
    for (int k = 0; k < n; ++k) {
      const auto z = s.normals(static_cast<std::uint32_t>(k));
      sxy += z[0] * z[1];
      syz += z[1] * z[2];
    }
    CHECK(std::abs(sxy / n) < 5 / std::sqrt(n));
    CHECK(std::abs(syz / n) < 5 / std::sqrt(n));
  }
}
