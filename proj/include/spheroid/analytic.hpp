#pragma once

/// @file analytic.hpp
/// @brief Series solution of the point-source Green's function around a
///        porous, absorbing sphere, and its inversion to the time domain.
///
/// Frequency convention: C(omega) = integral of c(t) exp(-i omega t) dt, so
/// d/dt -> i omega. Outside the spheroid
///     D lap C - i omega C = -delta(r - r_tx),
/// inside
///     D_eff lap C + K(omega) C - i omega C = 0,
/// with c_s = k c_o and D_eff dc_s/dr = D dc_o/dr on r = R_s.
///
/// The "decay wavenumbers" k1 = sqrt(i omega / D) and
/// k2 = sqrt((i omega - K(omega)) / D_eff) turn both equations into
/// lap C = k^2 C; the radial functions are spherical Bessel functions of the
/// Helmholtz argument i*k*r. The outer region uses the outgoing Hankel
/// function h_n(i k1 r), which decays because Re k1 > 0.
///
/// Each mode's radial function uses bases normalised at a reference radius:
///   r < R_s:           R_n = g_n j_n(i k2 r) / j_n(i k2 R_s)
///   R_s < r < r_tx:    R_n = b_n j_n(i k1 r) / j_n(i k1 r_tx)
///                          + a_n h_n(i k1 r) / h_n(i k1 R_s)
///   r > r_tx:          R_n = d_n h_n(i k1 r) / h_n(i k1 r_tx)
/// and the source condition is r_tx^2 [dR_n/dr] = -1/D across r_tx, which
/// reproduces exp(-k1 d) / (4 pi D d) when the spheroid is removed.

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "spheroid/model.hpp"
#include "spheroid/specfun.hpp"
#include "spheroid/timeseries.hpp"

namespace spheroid::analytic {

using Complex = std::complex<double>;

class SingularSystemError : public std::runtime_error {
 public:
  SingularSystemError(int mode, double omega, double condition);
  int mode;
  double omega;
  double condition;
};

class TruncationError : public std::runtime_error {
 public:
  TruncationError(int n_max, double tail, double omega);
  int n_max;
  double tail;
  double omega;
};

class AliasingError : public std::runtime_error {
 public:
  AliasingError(double edge_ratio, double tolerance);
  double edge_ratio;
  double tolerance;
};

enum class Region { Inside, Outside };

struct FieldPoint {
  double r = 0.0;
  double theta = 0.0;
  double phi = 0.0;
  Region region = Region::Outside;

  /// Region follows r < R_s.
  static FieldPoint at(const SphericalPoint& p, const SpheroidGeometry& geom);
  static FieldPoint at(const Vec3& p, const SpheroidGeometry& geom);
  /// A point on r = R_s assigned to the requested side of the interface.
  static FieldPoint on_boundary(double theta, double phi, Region side, const SpheroidGeometry& geom);
  [[nodiscard]] SphericalPoint spherical() const { return {r, theta, phi}; }
};

struct Wavenumbers {
  Complex k1;
  Complex k2;
};

/// Principal square roots. k1 = 0 at omega = 0.
Wavenumbers wavenumbers(double omega, const MediumModel& medium);

struct ModeSolution {
  int n = 0;
  double omega = 0.0;
  Complex k1;
  Complex k2;
  Complex g_n;
  Complex a_n;
  Complex b_n;
  Complex d_n;
  /// 1-norm condition number of the row-equilibrated 4x4 system.
  double condition = 0.0;
};

struct TruncationPolicy {
  double rel_tol = 1e-8;
  int consecutive = 3;
  int n_cap = 200;
};

/// All modes 0..n_max at one frequency, with the Bessel tables at the
/// interface and source radii kept for evaluating radial functions.
class ModeSet {
 public:
  ModeSet(double omega, const SpheroidGeometry& geom, const MediumModel& medium, int n_max);
  /// Explicit wavenumbers (used to check branch invariance). The outer basis
  /// always takes the decaying branch, so the sign of k1 is normalised.
  ModeSet(double omega, const SpheroidGeometry& geom, const MediumModel& medium, int n_max,
          Wavenumbers k);

  [[nodiscard]] int n_max() const { return static_cast<int>(modes_.size()) - 1; }
  [[nodiscard]] double omega() const { return omega_; }
  [[nodiscard]] const ModeSolution& mode(int n) const { return modes_.at(static_cast<std::size_t>(n)); }
  [[nodiscard]] const Wavenumbers& k() const { return k_; }

  /// R_n(r) for n = 0..n_max. At r == R_s or r == r_tx the side argument picks
  /// the one-sided limit.
  [[nodiscard]] std::vector<Complex> radial_values(double r, Region side) const;

  /// Integral of R_0(r) r^2 dr over [0, R_s]; equals the volume integral of
  /// the interior concentration spectrum.
  [[nodiscard]] Complex interior_volume_integral() const;

 private:
  void build(const MediumModel& medium);

  double omega_;
  double radius_;
  double r_tx_;
  Wavenumbers k_;
  std::vector<ModeSolution> modes_;
  std::vector<specfun::ScaledComplex> j1_tx_, h1_rs_, h1_tx_, j2_rs_;
};

ModeSolution mode_coefficients(int n, double omega, const SpheroidGeometry& geom,
                               const MediumModel& medium);

struct RadialValue {
  Complex value;
  Complex derivative;
};

/// Radial function and its r-derivative for one solved mode, evaluated with
/// single-order Bessel calls (independent of the table-driven assembly).
RadialValue radial_function(const ModeSolution& sol, double r, Region side,
                            const SpheroidGeometry& geom);

/// Relative residuals of the four interface/source constraints.
struct ModeResiduals {
  double flux = 0.0;        // D_eff R_s' = D R_o' at R_s
  double jump = 0.0;        // R_s = k R_o at R_s
  double continuity = 0.0;  // R_o continuous at r_tx
  double source = 0.0;      // r_tx^2 [R_o'] = -1/D
  [[nodiscard]] double max() const;
};

ModeResiduals mode_residuals(const ModeSolution& sol, const SpheroidGeometry& geom,
                             const MediumModel& medium);

struct SeriesValue {
  Complex value;
  int n_used = 0;
  double tail = 0.0;
};

/// Frequency-domain concentration at a field point. The default path rotates
/// the source onto the polar axis (m = 0 only); general_m sums the full
/// (n, m) expansion in the original frame.
SeriesValue cgf_frequency(const FieldPoint& point, double omega, const SpheroidGeometry& geom,
                          const MediumModel& medium, const TruncationPolicy& policy = {},
                          bool general_m = false);

/// exp(-k1 d) / (4 pi D d).
Complex free_space_cgf_frequency(const Vec3& point, double omega, double d_free, const Vec3& tx);

/// (4 pi D t)^-3/2 exp(-d^2 / (4 D t)).
double free_space_cgf(const Vec3& point, double t, double d_free, const SphericalPoint& tx);

/// Midpoint frequency grid omega_j = (j + 1/2) * omega_max / n_samples.
/// The half-bin offset keeps omega = 0 off the grid; the implied time period
/// is 2 pi n_samples / omega_max.
struct FrequencyGrid {
  double omega_max = 2.0 * kPi * 2.0;
  std::size_t n_samples = 1u << 14;
  double aliasing_tol = 1e-6;

  [[nodiscard]] double spacing() const { return omega_max / static_cast<double>(n_samples); }
  [[nodiscard]] double omega(std::size_t j) const { return (static_cast<double>(j) + 0.5) * spacing(); }
  [[nodiscard]] double period() const { return 2.0 * kPi / spacing(); }
  void validate() const;
};

/// Real time signal from one-sided spectrum samples on grid (Hermitian
/// extension implied): c(t) = (d omega / pi) Re sum_j C_j exp(i omega_j t).
/// Throws AliasingError if |C| at the top of the grid exceeds
/// aliasing_tol * max|C|.
TimeSeries invert_spectrum(std::span<const Complex> spectrum, const FrequencyGrid& fgrid,
                           const TimeGrid& times);

std::vector<TimeSeries> cgf_time(std::span<const FieldPoint> points, const TimeGrid& times,
                                 const SpheroidGeometry& geom, const MediumModel& medium,
                                 const FrequencyGrid& fgrid, const TruncationPolicy& policy = {});

TimeSeries cgf_time(const FieldPoint& point, const TimeGrid& times, const SpheroidGeometry& geom,
                    const MediumModel& medium, const FrequencyGrid& fgrid,
                    const TruncationPolicy& policy = {});

/// k_f times the interior volume integral of c_s: the rate at which E is
/// generated inside the receiver, per released molecule.
TimeSeries received_signal_analytic(const TimeGrid& times, const SpheroidGeometry& geom,
                                    const MediumModel& medium, const FrequencyGrid& fgrid);

/// Angular mean of c_s at each radius (only the n = 0 mode survives the
/// average), one series per radius in [0, R_s].
std::vector<TimeSeries> interior_angular_mean(std::span<const double> radii, const TimeGrid& times,
                                              const SpheroidGeometry& geom,
                                              const MediumModel& medium,
                                              const FrequencyGrid& fgrid);

}  // namespace spheroid::analytic
