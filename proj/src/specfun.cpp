#include "spheroid/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace spheroid::specfun {

namespace {

constexpr double kRescaleThreshold = 1e250;
const double kLogRescale = std::log(kRescaleThreshold);
// Below this |Im z| the library sin/cos cannot overflow.
constexpr double kDirectTrigLimit = 600.0;

void require_nonzero(Complex z, const char* who) {
  if (z == Complex{0.0, 0.0}) {
    throw std::invalid_argument(std::string(who) + ": argument z must be non-zero");
  }
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw std::invalid_argument(std::string(who) + ": argument z must be finite");
  }
}

void require_order(int n, const char* who) {
  if (n < 0) {
    throw std::invalid_argument(std::string(who) + ": order must be non-negative");
  }
}

ScaledComplex normalized(Complex m, double e) { return ScaledComplex{m, e}; }

// exp(i z) and exp(-i z) in scaled form.
ScaledComplex exp_iz(Complex z) { return {std::polar(1.0, z.real()), -z.imag()}; }
ScaledComplex exp_miz(Complex z) { return {std::polar(1.0, -z.real()), z.imag()}; }

ScaledComplex scaled_sin(Complex z) {
  if (std::abs(z.imag()) < kDirectTrigLimit) {
    return ScaledComplex{std::sin(z)};
  }
  // (e^{iz} - e^{-iz}) / (2i); one term is negligible at this |Im z|.
  return (exp_iz(z) - exp_miz(z)) * Complex{0.0, -0.5};
}

ScaledComplex scaled_cos(Complex z) {
  if (std::abs(z.imag()) < kDirectTrigLimit) {
    return ScaledComplex{std::cos(z)};
  }
  return (exp_iz(z) + exp_miz(z)) * Complex{0.5, 0.0};
}

// Upward three-term recurrence f_{n+1} = (2n+1)/z f_n - f_{n-1} seeded with
// f_0, f_1.
std::vector<ScaledComplex> upward(int n_max, Complex z, ScaledComplex f0, ScaledComplex f1) {
  std::vector<ScaledComplex> out;
  out.reserve(static_cast<std::size_t>(n_max) + 1);
  out.push_back(f0);
  if (n_max == 0) {
    return out;
  }
  out.push_back(f1);

  // Bring the seeds to a common exponent.
  double scale = std::max(f0.is_zero() ? -1e300 : f0.log_scale, f1.is_zero() ? -1e300 : f1.log_scale);
  Complex prev = f0.mantissa * std::exp(f0.log_scale - scale);
  Complex cur = f1.mantissa * std::exp(f1.log_scale - scale);
  const Complex inv_z = 1.0 / z;
  for (int n = 1; n < n_max; ++n) {
    Complex next = static_cast<double>(2 * n + 1) * inv_z * cur - prev;
    prev = cur;
    cur = next;
    if (std::abs(cur) > kRescaleThreshold) {
      prev /= kRescaleThreshold;
      cur /= kRescaleThreshold;
      scale += kLogRescale;
    }
    if (!std::isfinite(cur.real()) || !std::isfinite(cur.imag())) {
      throw OverflowError("spherical Bessel upward recurrence overflowed at order " +
                          std::to_string(n + 1));
    }
    out.push_back(normalized(cur, scale));
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// ScaledComplex
// ---------------------------------------------------------------------------

ScaledComplex::ScaledComplex(Complex m, double e) : mantissa(m), log_scale(e) {
  const double a = std::abs(m);
  if (a == 0.0 || !std::isfinite(a)) return;
  if (a > 1e100 || a < 1e-100) {
    mantissa = m / a;
    log_scale = e + std::log(a);
  }
}

Complex ScaledComplex::value() const {
  if (is_zero()) {
    return {0.0, 0.0};
  }
  const double la = log_abs();
  if (la > std::log(std::numeric_limits<double>::max())) {
    throw OverflowError("value exceeds double range (log|v| = " + std::to_string(la) + ")");
  }
  return mantissa * std::exp(log_scale);
}

double ScaledComplex::log_abs() const {
  if (is_zero()) {
    return -std::numeric_limits<double>::infinity();
  }
  return std::log(std::abs(mantissa)) + log_scale;
}

ScaledComplex operator*(const ScaledComplex& a, const ScaledComplex& b) {
  return {a.mantissa * b.mantissa, a.log_scale + b.log_scale};
}

ScaledComplex operator*(const ScaledComplex& a, Complex b) {
  return {a.mantissa * b, a.log_scale};
}

ScaledComplex operator/(const ScaledComplex& a, const ScaledComplex& b) {
  if (b.is_zero()) {
    throw std::domain_error("division by zero in scaled arithmetic");
  }
  return {a.mantissa / b.mantissa, a.log_scale - b.log_scale};
}

ScaledComplex operator+(const ScaledComplex& a, const ScaledComplex& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const double e = std::max(a.log_scale, b.log_scale);
  return {a.mantissa * std::exp(a.log_scale - e) + b.mantissa * std::exp(b.log_scale - e), e};
}

ScaledComplex operator-(const ScaledComplex& a, const ScaledComplex& b) {
  return a + ScaledComplex{-b.mantissa, b.log_scale};
}

Complex ratio(const ScaledComplex& a, const ScaledComplex& b) { return (a / b).value(); }

// ---------------------------------------------------------------------------
// Legendre
// ---------------------------------------------------------------------------

double assoc_legendre(int n, int m, double x) {
  if (m < 0 || m > n) {
    throw std::invalid_argument("assoc_legendre: require 0 <= m <= n");
  }
  if (!(std::abs(x) <= 1.0)) {
    throw std::invalid_argument("assoc_legendre: require |x| <= 1");
  }
  double pmm = 1.0;
  if (m > 0) {
    const double s = std::sqrt((1.0 - x) * (1.0 + x));
    double fact = 1.0;
    for (int i = 1; i <= m; ++i) {
      pmm *= -fact * s;
      fact += 2.0;
    }
  }
  if (n == m) {
    return pmm;
  }
  double pmmp1 = x * (2 * m + 1) * pmm;
  if (n == m + 1) {
    return pmmp1;
  }
  double pll = 0.0;
  for (int l = m + 2; l <= n; ++l) {
    pll = (x * (2 * l - 1) * pmmp1 - (l + m - 1) * pmm) / (l - m);
    pmm = pmmp1;
    pmmp1 = pll;
  }
  return pll;
}

double assoc_legendre_normalized(int n, int m, double x) {
  if (m < 0 || m > n) {
    throw std::invalid_argument("assoc_legendre_normalized: require 0 <= m <= n");
  }
  if (!(std::abs(x) <= 1.0)) {
    throw std::invalid_argument("assoc_legendre_normalized: require |x| <= 1");
  }
  const double s = std::sqrt((1.0 - x) * (1.0 + x));
  double pmm = 1.0;
  for (int i = 1; i <= m; ++i) {
    pmm *= -s * std::sqrt((2.0 * i - 1.0) / (2.0 * i));
  }
  if (n == m) {
    return pmm;
  }
  double pmmp1 = x * std::sqrt(2.0 * m + 1.0) * pmm;
  if (n == m + 1) {
    return pmmp1;
  }
  double pll = 0.0;
  const double mm = static_cast<double>(m) * m;
  for (int l = m + 2; l <= n; ++l) {
    const double ll = static_cast<double>(l);
    pll = ((2.0 * ll - 1.0) * x * pmmp1 - std::sqrt((ll - 1.0) * (ll - 1.0) - mm) * pmm) /
          std::sqrt(ll * ll - mm);
    pmm = pmmp1;
    pmmp1 = pll;
  }
  return pll;
}

std::vector<double> legendre_table(int n_max, double x) {
  if (n_max < 0) {
    throw std::invalid_argument("legendre_table: n_max must be non-negative");
  }
  std::vector<double> p(static_cast<std::size_t>(n_max) + 1);
  p[0] = 1.0;
  if (n_max >= 1) p[1] = x;
  for (int n = 2; n <= n_max; ++n) {
    p[n] = ((2.0 * n - 1.0) * x * p[n - 1] - (n - 1.0) * p[n - 2]) / n;
  }
  return p;
}

// ---------------------------------------------------------------------------
// Spherical Bessel
// ---------------------------------------------------------------------------

std::vector<ScaledComplex> sph_bessel_j_table(int n_max, Complex z) {
  require_order(n_max, "sph_bessel_j");
  require_nonzero(z, "sph_bessel_j");

  const double az = std::abs(z);
  const double m0 = std::max(static_cast<double>(n_max), std::ceil(az));
  const int start = static_cast<int>(m0) + 20 + static_cast<int>(std::ceil(std::sqrt(160.0 * m0)));

  // Unnormalised backward recurrence; f_k = stored[k] * exp(exps[k]).
  const std::size_t keep = static_cast<std::size_t>(std::max(n_max, 1)) + 1;
  std::vector<Complex> stored(keep);
  std::vector<double> exps(keep);
  Complex next{0.0, 0.0};
  Complex cur{1e-200, 0.0};
  double scale = 0.0;
  const Complex inv_z = 1.0 / z;
  for (int k = start; k >= 1; --k) {
    Complex prev = static_cast<double>(2 * k + 1) * inv_z * cur - next;
    next = cur;
    cur = prev;
    if (std::abs(cur) > kRescaleThreshold) {
      cur /= kRescaleThreshold;
      next /= kRescaleThreshold;
      scale += kLogRescale;
    }
    // cur is f_{k-1}, next is f_k.
    if (static_cast<std::size_t>(k) < keep) {
      stored[k] = next;
      exps[k] = scale;
    }
  }
  stored[0] = cur;
  exps[0] = scale;

  // Normalise against whichever of j_0, j_1 is better conditioned.
  const ScaledComplex sin_z = scaled_sin(z);
  const ScaledComplex cos_z = scaled_cos(z);
  const ScaledComplex j0 = sin_z * inv_z;
  int ref = 0;
  ScaledComplex jref = j0;
  if (az >= 1.0) {
    const ScaledComplex j1 = (sin_z * inv_z - cos_z) * inv_z;
    if (j1.log_abs() > j0.log_abs()) {
      ref = 1;
      jref = j1;
    }
  }
  const ScaledComplex fref{stored[ref], exps[ref]};
  const ScaledComplex factor = jref / fref;

  std::vector<ScaledComplex> out;
  out.reserve(static_cast<std::size_t>(n_max) + 1);
  for (int k = 0; k <= n_max; ++k) {
    out.push_back(ScaledComplex{stored[k], exps[k]} * factor);
  }
  return out;
}

// y_n = -i (h_n - j_n), from two tables that are each computed stably.
std::vector<ScaledComplex> sph_bessel_y_table(int n_max, Complex z) {
  require_order(n_max, "sph_bessel_y");
  require_nonzero(z, "sph_bessel_y");
  const auto j = sph_bessel_j_table(n_max, z);
  const auto h = sph_hankel_out_table(n_max, z);
  std::vector<ScaledComplex> y;
  y.reserve(j.size());
  for (std::size_t k = 0; k < j.size(); ++k) y.push_back((h[k] - j[k]) * Complex{0.0, -1.0});
  return y;
}

namespace {

// Upward recurrence from the closed forms of h_0, h_1. Stable for Im z >= 0,
// where the competing solution h^(2) never gains on h^(1).
std::vector<ScaledComplex> hankel_upper(int n_max, Complex z) {
  const Complex inv_z = 1.0 / z;
  const ScaledComplex e = exp_iz(z);
  const ScaledComplex h0 = e * (Complex{0.0, -1.0} * inv_z);
  const ScaledComplex h1 = e * (-(z + Complex{0.0, 1.0}) * inv_z * inv_z);
  return upward(n_max, z, h0, h1);
}

ScaledComplex conj(const ScaledComplex& a) { return {std::conj(a.mantissa), a.log_scale}; }

}  // namespace

std::vector<ScaledComplex> sph_hankel_out_table(int n_max, Complex z) {
  require_order(n_max, "sph_hankel_out");
  require_nonzero(z, "sph_hankel_out");
  if (z.imag() >= 0.0) return hankel_upper(n_max, z);
  // Lower half-plane: h^(1)(z) = 2 j(z) - conj(h^(1)(conj z)); the subtracted
  // term is h^(2)(z), which is the small one here.
  const auto j = sph_bessel_j_table(n_max, z);
  const auto hc = hankel_upper(n_max, std::conj(z));
  std::vector<ScaledComplex> h;
  h.reserve(j.size());
  for (std::size_t k = 0; k < j.size(); ++k) h.push_back(j[k] * Complex{2.0, 0.0} - conj(hc[k]));
  return h;
}

std::vector<ScaledComplex> derivative_table(std::span<const ScaledComplex> f, Complex z) {
  if (f.size() < 2) {
    throw std::invalid_argument("derivative_table: need orders 0..N with N >= 1");
  }
  const Complex inv_z = 1.0 / z;
  std::vector<ScaledComplex> d;
  d.reserve(f.size() - 1);
  d.push_back(f[1] * Complex{-1.0, 0.0});
  for (std::size_t n = 1; n + 1 < f.size(); ++n) {
    d.push_back(f[n - 1] - f[n] * (static_cast<double>(n + 1) * inv_z));
  }
  return d;
}

Complex sph_bessel_j(int n, Complex z) { return sph_bessel_j_table(n, z)[n].value(); }

Complex sph_bessel_y(int n, Complex z) { return sph_bessel_y_table(n, z)[n].value(); }

Complex sph_hankel_out(int n, Complex z) { return sph_hankel_out_table(n, z)[n].value(); }

Complex sph_bessel_j_deriv(int n, Complex z) {
  const auto f = sph_bessel_j_table(n + 1, z);
  return derivative_table(f, z)[n].value();
}

Complex sph_bessel_y_deriv(int n, Complex z) {
  const auto f = sph_bessel_y_table(n + 1, z);
  return derivative_table(f, z)[n].value();
}

Complex sph_hankel_out_deriv(int n, Complex z) {
  const auto f = sph_hankel_out_table(n + 1, z);
  return derivative_table(f, z)[n].value();
}

}  // namespace spheroid::specfun
