#pragma once

/// @file specfun.hpp
/// @brief Associated Legendre functions and spherical Bessel functions of
///        complex argument.
///
/// Spherical Bessel families are evaluated for all orders 0..n_max at once.
/// Results are returned in a log-scaled form (ScaledComplex) so that the
/// exponential growth of j_n / y_n for complex arguments and the factorial
/// growth for small |z| never leak out as inf or silent zeros. The plain
/// ComplexValue wrappers unscale and throw OverflowError when the value is
/// not representable in double precision.
///
/// Legendre convention: Condon–Shortley phase, P_nm(x) includes (-1)^m.

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

namespace spheroid::specfun {

using Complex = std::complex<double>;

class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// value = mantissa * exp(log_scale)
struct ScaledComplex {
  Complex mantissa{0.0, 0.0};
  double log_scale = 0.0;

  ScaledComplex() = default;
  ScaledComplex(Complex m, double e = 0.0);

  /// Unscaled value; underflow rounds to zero, overflow throws.
  [[nodiscard]] Complex value() const;
  /// log|value|, -inf for an exact zero.
  [[nodiscard]] double log_abs() const;
  [[nodiscard]] bool is_zero() const { return mantissa == Complex{0.0, 0.0}; }
};

ScaledComplex operator*(const ScaledComplex& a, const ScaledComplex& b);
ScaledComplex operator*(const ScaledComplex& a, Complex b);
ScaledComplex operator/(const ScaledComplex& a, const ScaledComplex& b);
ScaledComplex operator+(const ScaledComplex& a, const ScaledComplex& b);
ScaledComplex operator-(const ScaledComplex& a, const ScaledComplex& b);

/// a / b as an ordinary complex number (throws OverflowError if it does not fit).
Complex ratio(const ScaledComplex& a, const ScaledComplex& b);

// ---------------------------------------------------------------------------
// Legendre
// ---------------------------------------------------------------------------

/// P_nm(x), Condon–Shortley phase. Requires 0 <= m <= n, |x| <= 1.
double assoc_legendre(int n, int m, double x);

/// sqrt((n-m)!/(n+m)!) * P_nm(x). Stays O(1) for large n, m.
double assoc_legendre_normalized(int n, int m, double x);

/// Fills P_n(x) for n = 0..n_max.
std::vector<double> legendre_table(int n_max, double x);

// ---------------------------------------------------------------------------
// Spherical Bessel families, orders 0..n_max
// ---------------------------------------------------------------------------

/// j_n(z) by Miller's backward recurrence, normalised to a closed form.
std::vector<ScaledComplex> sph_bessel_j_table(int n_max, Complex z);

/// y_n(z) = -i (h_n(z) - j_n(z)).
std::vector<ScaledComplex> sph_bessel_y_table(int n_max, Complex z);

/// h_n(z) = j_n(z) + i y_n(z). Upward recurrence from closed forms for
/// Im z >= 0, so the decaying branch never suffers the j + i y cancellation;
/// the lower half-plane uses the reflection 2 j_n(z) - conj(h_n(conj z)).
std::vector<ScaledComplex> sph_hankel_out_table(int n_max, Complex z);

/// Derivatives f'_n(z) for n = 0..table.size()-2 given f_0..f_{N}.
std::vector<ScaledComplex> derivative_table(std::span<const ScaledComplex> f, Complex z);

// Single-order convenience wrappers.
Complex sph_bessel_j(int n, Complex z);
Complex sph_bessel_y(int n, Complex z);
Complex sph_bessel_j_deriv(int n, Complex z);
Complex sph_bessel_y_deriv(int n, Complex z);
Complex sph_hankel_out(int n, Complex z);
Complex sph_hankel_out_deriv(int n, Complex z);

}  // namespace spheroid::specfun
