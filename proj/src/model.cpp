#include "spheroid/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace spheroid {

double Vec3::norm() const { return std::sqrt(norm2()); }

Vec3 SphericalPoint::cartesian() const {
  const double s = std::sin(theta);
  return {r * s * std::cos(phi), r * s * std::sin(phi), r * std::cos(theta)};
}

SphericalPoint SphericalPoint::from_cartesian(Vec3 p) {
  const double r = p.norm();
  if (r == 0.0) {
    return {0.0, 0.0, 0.0};
  }
  return {r, std::acos(std::clamp(p.z / r, -1.0, 1.0)), std::atan2(p.y, p.x)};
}

double cos_angle_between(const SphericalPoint& a, const SphericalPoint& b) {
  const double c = std::cos(a.theta) * std::cos(b.theta) +
                   std::sin(a.theta) * std::sin(b.theta) * std::cos(a.phi - b.phi);
  return std::clamp(c, -1.0, 1.0);
}

double SpheroidGeometry::volume() const { return 4.0 / 3.0 * kPi * radius_m * radius_m * radius_m; }

double SpheroidGeometry::cell_matrix_volume() const {
  return static_cast<double>(n_cells) * cell_volume_m3;
}

void SpheroidGeometry::validate() const {
  if (!(radius_m > 0.0)) {
    throw std::invalid_argument("geometry.radius: must be positive");
  }
  if (n_cells < 0) {
    throw std::invalid_argument("geometry.n_cells: must be non-negative");
  }
  if (!(cell_volume_m3 >= 0.0)) {
    throw std::invalid_argument("geometry.cell_volume: must be non-negative");
  }
  if (!(cell_matrix_volume() < volume())) {
    throw std::invalid_argument(
        "geometry: porosity constraint violated (n_cells * cell_volume must be below the "
        "spheroid volume)");
  }
  if (!(tx_position.r > radius_m)) {
    throw std::invalid_argument("geometry.tx_position: transmitter must lie outside the spheroid");
  }
}

double porosity(std::int64_t n_cells, double cell_volume_m3, double radius_m) {
  if (!(radius_m > 0.0)) {
    throw std::invalid_argument("porosity: radius must be positive");
  }
  if (n_cells < 0 || !(cell_volume_m3 >= 0.0)) {
    throw std::invalid_argument("porosity: cell count and cell volume must be non-negative");
  }
  const double vs = 4.0 / 3.0 * kPi * radius_m * radius_m * radius_m;
  const double packed = static_cast<double>(n_cells) * cell_volume_m3;
  if (packed > vs) {
    throw std::invalid_argument("porosity: cell matrix volume exceeds spheroid volume");
  }
  return 1.0 - packed / vs;
}

double tortuosity(double eps) {
  if (!(eps > 0.0) || eps > 1.0) {
    throw std::invalid_argument("tortuosity: porosity must lie in (0, 1]");
  }
  return 1.0 / std::sqrt(eps);
}

double effective_diffusion(double d_free, double eps) {
  if (!(d_free > 0.0)) {
    throw std::invalid_argument("effective_diffusion: d_free must be positive");
  }
  if (!(eps > 0.0) || eps > 1.0) {
    throw std::invalid_argument("effective_diffusion: porosity must lie in (0, 1]");
  }
  return eps / tortuosity(eps) * d_free;
}

double boundary_jump(double d_free, double d_eff) {
  if (!(d_eff > 0.0)) {
    throw std::invalid_argument("boundary_jump: d_eff must be positive");
  }
  if (d_eff > d_free) {
    throw std::invalid_argument("boundary_jump: d_eff must not exceed d_free");
  }
  return std::sqrt(d_free / d_eff);
}

MediumModel MediumModel::from_porosity(double d_free, double eps, double k_f) {
  if (!(k_f >= 0.0)) {
    throw std::invalid_argument("medium.k_f: must be non-negative");
  }
  MediumModel m;
  m.d_free = d_free;
  m.porosity = eps;
  m.tortuosity = spheroid::tortuosity(eps);
  m.d_eff = effective_diffusion(d_free, eps);
  m.jump_k = boundary_jump(d_free, m.d_eff);
  m.k_f = k_f;
  m.sink = std::make_shared<FirstOrderSink>(k_f);
  return m;
}

MediumModel MediumModel::for_geometry(const SpheroidGeometry& geom, double d_free, double k_f) {
  return from_porosity(d_free, spheroid::porosity(geom.n_cells, geom.cell_volume_m3, geom.radius_m), k_f);
}

MediumModel MediumModel::transparent() const { return from_porosity(d_free, 1.0, k_f); }

std::complex<double> MediumModel::sink_at(double omega) const {
  return sink ? sink->at(omega) : std::complex<double>{-k_f, 0.0};
}

void MediumModel::validate() const {
  if (!(d_free > 0.0)) throw std::invalid_argument("medium.d_free: must be positive");
  if (!(porosity > 0.0) || porosity > 1.0) {
    throw std::invalid_argument("medium.porosity: must lie in (0, 1]");
  }
  if (!(d_eff > 0.0) || d_eff > d_free) {
    throw std::invalid_argument("medium.d_eff: must lie in (0, d_free]");
  }
  if (!(k_f >= 0.0)) throw std::invalid_argument("medium.k_f: must be non-negative");
}

}  // namespace spheroid
