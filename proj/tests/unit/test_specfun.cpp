#include <doctest.h>

#include "approx.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "spheroid/specfun.hpp"

using namespace spheroid::specfun;
using C = std::complex<double>;

namespace {

struct Ref {
  int n;
  C z;
  C j;
  C y;
  C h;
};

// 40-digit reference values (mpmath), rounded to double.
const std::vector<Ref> kRefs = {
    {0, {1, 0}, {8.4147098480789651e-1, 0}, {-5.4030230586813972e-1, 0},
     {8.4147098480789651e-1, -5.4030230586813972e-1}},
    {2, {0.001, 0}, {6.666666190476204e-8, 0}, {-3.0000005000001248e+9, 0},
     {6.666666190476204e-8, -3.0000005000001248e+9}},
    {5, {3, 2}, {-3.826973982196613e-2, 3.0589563656576337e-2},
     {4.7513730981211958e-1, 1.2480068215776631e-1},
     {-1.6307042197973244e-1, 5.0572687346869592e-1}},
    {10, {-7, 4}, {-3.1268909732527756e-2, 2.9984718502913107e-2},
     {-1.1254349113660731e-1, -1.5162648498151788e-1},
     {1.2035757524899013e-1, -8.2558772633694204e-2}},
    {30, {0.5, 0.5}, {-6.7952235053874928e-50, -1.7123873514688133e-47},
     {-9.532715945460621e+44, -9.6138459292436578e+44},
     {9.6138459292436578e+44, -9.532715945460621e+44}},
    {50, {40, -30}, {1.1005239091693086e+3, -4.0586487950418173e+3},
     {-4.0586487950451913e+3, -1.100523909212372e+3},
     {2.2010478183816806e+3, -8.1172975900870085e+3}},
    {3, {-70.710678118654755, 70.710678118654755}, {1.8481235528062298e+28, -1.613849378467263e+28},
     {1.613849378467263e+28, 1.8481235528062298e+28},
     {-1.3413111445793186e-33, 1.53416344306864e-33}},
    {100, {0, 300}, {1.7954006131554225e+120, 0}, {0, 1.7954006131554225e+120},
     {-2.9340670956999893e-126, -1.2933689027318537e-140}},
    {100, {800, 500}, {3.2687691503055462e+212, 2.858696576257759e+212},
     {-2.858696576257759e+212, 3.2687691503055462e+212},
     {-3.4605827356571414e-220, -1.249903210493423e-219}},
    {60, {0.01, -0.01}, {-1.2726097364797767e-212, -1.0346420621789081e-218},
     {3.2470558404256571e+211, 3.2470503831935364e+211},
     {-3.2470503831935364e+211, 3.2470558404256571e+211}},
    {7, {25, 0}, {2.2301229641816942e-2, 0}, {3.4341080069015845e-2, 0},
     {2.2301229641816942e-2, 3.4341080069015845e-2}},
};

double rel(C got, C want) { return std::abs(got - want) / std::abs(want); }

struct GridPoint {
  int n;
  C z;
};

// n <= 50, 0.05 <= |z| <= 100, uniform in angle.
std::vector<GridPoint> random_grid(std::size_t count) {
  std::mt19937_64 gen(12345);
  std::uniform_int_distribution<int> order(0, 50);
  std::uniform_real_distribution<double> mag(std::log(0.05), std::log(100.0));
  std::uniform_real_distribution<double> ang(-M_PI, M_PI);
  std::vector<GridPoint> g;
  for (std::size_t i = 0; i < count; ++i) g.push_back({order(gen), std::polar(std::exp(mag(gen)), ang(gen))});
  return g;
}

}  // namespace

TEST_SUITE("specfun") {
  TEST_CASE("reference values of j, y and h") {
    for (const auto& r : kRefs) {
      CAPTURE(r.n);
      CAPTURE(r.z);
      const auto j = sph_bessel_j_table(r.n, r.z)[static_cast<std::size_t>(r.n)];
      const auto y = sph_bessel_y_table(r.n, r.z)[static_cast<std::size_t>(r.n)];
      const auto h = sph_hankel_out_table(r.n, r.z)[static_cast<std::size_t>(r.n)];
      const auto cmp = [](const ScaledComplex& got, C want) {
        return std::abs(ratio(got, ScaledComplex(want)) - C{1.0, 0.0});
      };
      CHECK(cmp(j, r.j) < 1e-11);
      CHECK(cmp(y, r.y) < 1e-11);
      CHECK(cmp(h, r.h) < 1e-11);
    }
  }

  TEST_CASE("closed forms at small order") {
    for (C z : {C{0.3, 0.0}, C{2.0, -1.0}, C{-5.0, 3.0}, C{0.0, 20.0}}) {
      CHECK(rel(sph_bessel_j(0, z), std::sin(z) / z) < 1e-13);
      CHECK(rel(sph_bessel_y(0, z), -std::cos(z) / z) < 1e-13);
      CHECK(rel(sph_bessel_j(1, z), std::sin(z) / (z * z) - std::cos(z) / z) < 1e-12);
      CHECK(rel(sph_hankel_out(0, z), C{0.0, -1.0} * std::exp(C{0.0, 1.0} * z) / z) < 1e-13);
    }
  }

  TEST_CASE("Wronskian j h' - j' h = i / z^2 relative to the term size") {
    double worst = 0.0;
    for (const auto& [n, z] : random_grid(2000)) {
      const auto j = sph_bessel_j_table(n + 1, z);
      const auto h = sph_hankel_out_table(n + 1, z);
      const auto dj = derivative_table(j, z);
      const auto dh = derivative_table(h, z);
      const auto k = static_cast<std::size_t>(n);
      const auto a = j[k] * dh[k];
      const auto b = dj[k] * h[k];
      // in the lower half-plane both products grow like exp(2 |Im z|)
      const double scale = std::max({std::exp(a.log_abs()), std::exp(b.log_abs()),
                                     1.0 / std::norm(z)});
      const C w = (a - b).value();
      worst = std::max(worst, std::abs(w - C{0.0, 1.0} / (z * z)) / scale);
    }
    CHECK(worst <= 1e-8);
  }

  TEST_CASE("Wronskian j y' - j' y = 1 / z^2 relative to the term size") {
    double worst = 0.0;
    for (const auto& [n, z] : random_grid(2000)) {
      const auto j = sph_bessel_j_table(n + 1, z);
      const auto y = sph_bessel_y_table(n + 1, z);
      const auto dj = derivative_table(j, z);
      const auto dy = derivative_table(y, z);
      const auto k = static_cast<std::size_t>(n);
      const auto a = j[k] * dy[k];
      const auto b = dj[k] * y[k];
      const double scale = std::max({std::exp(a.log_abs()), std::exp(b.log_abs()),
                                     1.0 / std::norm(z)});
      const C w = (a - b).value();
      worst = std::max(worst, std::abs(w - 1.0 / (z * z)) / scale);
    }
    CHECK(worst <= 1e-8);
  }

  TEST_CASE("three-term recurrence") {
    double worst = 0.0;
    for (const auto& [n, z] : random_grid(1000)) {
      if (n < 1) continue;
      for (const auto& f : {sph_bessel_j_table(n + 1, z), sph_bessel_y_table(n + 1, z),
                            sph_hankel_out_table(n + 1, z)}) {
        const auto k = static_cast<std::size_t>(n);
        const auto mid = f[k] * C{static_cast<double>(2 * n + 1), 0.0} / ScaledComplex(z);
        const auto lhs = f[k - 1] + f[k + 1];
        const double scale = std::max({std::exp(f[k - 1].log_abs()), std::exp(f[k + 1].log_abs()),
                                       std::exp(mid.log_abs())});
        if (!std::isfinite(scale)) continue;
        worst = std::max(worst, std::abs((lhs - mid).value()) / scale);
      }
    }
    CHECK(worst <= 1e-8);
  }

  TEST_CASE("parity under z -> -z") {
    double worst = 0.0;
    for (const auto& [n, z] : random_grid(1000)) {
      const double sj = (n % 2 == 0) ? 1.0 : -1.0;
      worst = std::max(worst, rel(sph_bessel_j(n, -z), sj * sph_bessel_j(n, z)));
      worst = std::max(worst, rel(sph_bessel_y(n, -z), -sj * sph_bessel_y(n, z)));
    }
    CHECK(worst <= 1e-8);
  }

  TEST_CASE("derivative identities agree") {
    // implemented: f'_n = f_{n-1} - (n+1)/z f_n; check against f'_n = n/z f_n - f_{n+1}
    double worst = 0.0;
    for (const auto& [n, z] : random_grid(1000)) {
      for (const auto& f : {sph_bessel_j_table(n + 1, z), sph_bessel_y_table(n + 1, z),
                            sph_hankel_out_table(n + 1, z)}) {
        const auto k = static_cast<std::size_t>(n);
        const auto d = derivative_table(f, z);
        const auto a = f[k] * (static_cast<double>(n) / z);
        const auto alt = a - f[k + 1];
        const double scale = std::max(std::exp(a.log_abs()), std::exp(f[k + 1].log_abs()));
        worst = std::max(worst, std::abs((d[k] - alt).value()) / scale);
      }
    }
    CHECK(worst <= 1e-8);
  }

  TEST_CASE("derivative against a finite difference") {
    for (C z : {C{1.5, 0.5}, C{-3.0, 7.0}, C{12.0, -2.0}}) {
      for (int n : {0, 3, 9}) {
        const C h{1e-5, 0.0};
        const C fd = (sph_bessel_j(n, z + h) - sph_bessel_j(n, z - h)) / (2.0 * h);
        CHECK(std::abs(sph_bessel_j_deriv(n, z) - fd) <= 1e-7 * std::max(1.0, std::abs(fd)));
      }
    }
  }

  TEST_CASE("zero argument and negative order are rejected") {
    CHECK_THROWS_AS(sph_bessel_j(1, C{0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(sph_bessel_j(-1, C{1.0, 0.0}), std::invalid_argument);
  }

  TEST_CASE("associated Legendre functions") {
    const double x = 0.3;
    CHECK(assoc_legendre(0, 0, x) == approx(1.0));
    CHECK(assoc_legendre(2, 0, x) == approx(0.5 * (3 * x * x - 1)));
    // Condon-Shortley phase: P_1^1 = -sqrt(1 - x^2)
    CHECK(assoc_legendre(1, 1, x) == approx(-std::sqrt(1 - x * x)));
    CHECK(assoc_legendre(3, 2, x) == approx(15 * x * (1 - x * x)));
    const auto t = legendre_table(5, x);
    for (int n = 0; n <= 5; ++n) CHECK(t[static_cast<std::size_t>(n)] == approx(assoc_legendre(n, 0, x)));
    // sqrt((n-m)!/(n+m)!) P_nm has squared norm 2 / (2n + 1) on [-1, 1]
    double s = 0.0;
    const int N = 20000;
    for (int i = 0; i < N; ++i) {
      const double xi = -1.0 + (i + 0.5) * 2.0 / N;
      const double p = assoc_legendre_normalized(4, 2, xi);
      s += p * p * 2.0 / N;
    }
    CHECK(s == approx(2.0 / 9.0).epsilon(1e-6));
  }
}
