#pragma once

/// @file model.hpp
/// @brief Porous-medium parameterisation of a spheroidal receiver.
///
/// The spheroid is a sphere of radius R_s packed with N_c cells of volume V_c.
/// Its void fraction sets the tortuosity (tau = eps^-1/2), the effective
/// diffusion coefficient (D_eff = eps / tau * D = eps^3/2 * D) and the
/// concentration jump at the surface (c_inside = k * c_outside with
/// k = sqrt(D / D_eff)). All quantities are SI.

#include <complex>
#include <cstdint>
#include <memory>

namespace spheroid {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  [[nodiscard]] double norm() const;
  [[nodiscard]] double norm2() const { return x * x + y * y + z * z; }
  friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
  friend double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
  friend bool operator==(const Vec3&, const Vec3&) = default;
};

/// (r, theta, phi): radius, polar angle from +z, azimuth from +x.
struct SphericalPoint {
  double r = 0.0;
  double theta = 0.0;
  double phi = 0.0;

  [[nodiscard]] Vec3 cartesian() const;
  static SphericalPoint from_cartesian(Vec3 p);
};

/// Cosine of the angle between two points seen from the origin.
double cos_angle_between(const SphericalPoint& a, const SphericalPoint& b);

struct SpheroidGeometry {
  double radius_m = 0.0;
  std::int64_t n_cells = 0;
  double cell_volume_m3 = 0.0;
  SphericalPoint tx_position;

  [[nodiscard]] double volume() const;
  [[nodiscard]] double cell_matrix_volume() const;
  /// Throws std::invalid_argument naming the violated constraint.
  void validate() const;
};

/// Net first-order reaction coefficient K(omega) acting on the interior
/// concentration in the frequency domain: dc/dt = D_eff lap c + K c.
class FrequencySink {
 public:
  virtual ~FrequencySink() = default;
  [[nodiscard]] virtual std::complex<double> at(double omega) const = 0;
};

/// Irreversible A -> E with rate k_f: K(omega) = -k_f.
class FirstOrderSink final : public FrequencySink {
 public:
  explicit FirstOrderSink(double k_f) : k_f_(k_f) {}
  [[nodiscard]] std::complex<double> at(double) const override { return {-k_f_, 0.0}; }
  [[nodiscard]] double rate() const { return k_f_; }

 private:
  double k_f_;
};

struct MediumModel {
  double d_free = 0.0;
  double porosity = 1.0;
  double tortuosity = 1.0;
  double d_eff = 0.0;
  double jump_k = 1.0;
  double k_f = 0.0;
  std::shared_ptr<const FrequencySink> sink;

  /// Builds the full record from D, eps and k_f; the sink defaults to -k_f.
  static MediumModel from_porosity(double d_free, double porosity, double k_f);
  static MediumModel for_geometry(const SpheroidGeometry& geom, double d_free, double k_f);
  /// Same free fluid and k_f, no porous hindrance (eps = 1, k = 1).
  [[nodiscard]] MediumModel transparent() const;

  [[nodiscard]] std::complex<double> sink_at(double omega) const;
  void validate() const;
};

double porosity(std::int64_t n_cells, double cell_volume_m3, double radius_m);
double tortuosity(double porosity);
double effective_diffusion(double d_free, double porosity);
double boundary_jump(double d_free, double d_eff);

}  // namespace spheroid
