#include "spheroid/analytic.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace spheroid::analytic {

using specfun::ScaledComplex;

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kMaxCondition = 1e12;

std::string describe_singular(int mode, double omega, double condition) {
  std::ostringstream os;
  os << "near-singular mode system at n = " << mode << ", omega = " << omega
     << " rad/s (condition " << condition << ")";
  return os.str();
}

std::string describe_truncation(int n_max, double tail, double omega) {
  std::ostringstream os;
  os << "series did not converge by n = " << n_max << " at omega = " << omega
     << " rad/s (relative tail " << tail << ")";
  return os.str();
}

std::string describe_aliasing(double ratio, double tol) {
  std::ostringstream os;
  os << "spectrum not resolved: |C(omega_max)| / max|C| = " << ratio << " exceeds " << tol
     << "; raise omega_max";
  return os.str();
}

Complex decaying_branch(Complex k) { return k.real() < 0.0 ? -k : k; }

// Legendre-weighted series sum with the adaptive stopping rule. Returns false
// if the table ran out before convergence.
bool sum_series(std::span<const Complex> radial, std::span<const double> angular,
                const TruncationPolicy& policy, SeriesValue& out) {
  Complex sum{0.0, 0.0};
  int quiet = 0;
  double tail = 0.0;
  const int n_avail = static_cast<int>(std::min(radial.size(), angular.size()));
  for (int n = 0; n < n_avail; ++n) {
    const Complex term = radial[n] * angular[n];
    sum += term;
    const double mag = std::abs(term);
    const double ref = std::abs(sum);
    if (mag <= policy.rel_tol * ref || (mag == 0.0 && ref == 0.0)) {
      ++quiet;
      tail += mag;
    } else {
      quiet = 0;
      tail = 0.0;
    }
    if (quiet >= policy.consecutive) {
      out.value = sum;
      out.n_used = n + 1;
      out.tail = ref > 0.0 ? tail / ref : 0.0;
      return true;
    }
  }
  out.value = sum;
  out.n_used = n_avail;
  // Tail estimate from the last terms actually summed.
  double last = 0.0;
  for (int n = std::max(0, n_avail - policy.consecutive); n < n_avail; ++n) {
    last += std::abs(radial[n] * angular[n]);
  }
  out.tail = std::abs(sum) > 0.0 ? last / std::abs(sum) : 0.0;
  return false;
}

// (2n+1)/(4 pi) P_n(cos gamma) for the source-aligned frame.
std::vector<double> axial_weights(int n_max, double cos_gamma) {
  auto p = specfun::legendre_table(n_max, cos_gamma);
  for (int n = 0; n <= n_max; ++n) {
    p[n] *= (2.0 * n + 1.0) / (4.0 * kPi);
  }
  return p;
}

// sum_m H_mn P_nm(cos theta) cos(m (phi - phi_tx)) in the original frame.
std::vector<double> general_weights(int n_max, const FieldPoint& p, const SphericalPoint& tx) {
  std::vector<double> w(static_cast<std::size_t>(n_max) + 1, 0.0);
  const double x = std::cos(p.theta);
  const double x_tx = std::cos(tx.theta);
  for (int n = 0; n <= n_max; ++n) {
    double acc = 0.0;
    for (int m = 0; m <= n; ++m) {
      const double l_m = m == 0 ? 1.0 / (2.0 * kPi) : 1.0 / kPi;
      acc += l_m * specfun::assoc_legendre_normalized(n, m, x) *
             specfun::assoc_legendre_normalized(n, m, x_tx) * std::cos(m * (p.phi - tx.phi));
    }
    w[n] = acc * (2.0 * n + 1.0) / 2.0;
  }
  return w;
}

int initial_mode_guess(double r, const SpheroidGeometry& geom, const TruncationPolicy& policy) {
  // Terms fall off roughly like (r_< / r_>)^n.
  const double r_tx = geom.tx_position.r;
  const double q = r < r_tx ? r / r_tx : r_tx / r;
  int guess = 24;
  if (q > 0.0 && q < 1.0) {
    guess = static_cast<int>(std::ceil(std::log(policy.rel_tol) / std::log(q))) + 8;
  } else if (q >= 1.0) {
    guess = policy.n_cap;
  }
  return std::clamp(guess, 8, policy.n_cap);
}

}  // namespace

SingularSystemError::SingularSystemError(int mode_, double omega_, double condition_)
    : std::runtime_error(describe_singular(mode_, omega_, condition_)),
      mode(mode_),
      omega(omega_),
      condition(condition_) {}

TruncationError::TruncationError(int n_max_, double tail_, double omega_)
    : std::runtime_error(describe_truncation(n_max_, tail_, omega_)),
      n_max(n_max_),
      tail(tail_),
      omega(omega_) {}

AliasingError::AliasingError(double edge_ratio_, double tolerance_)
    : std::runtime_error(describe_aliasing(edge_ratio_, tolerance_)),
      edge_ratio(edge_ratio_),
      tolerance(tolerance_) {}

// ---------------------------------------------------------------------------

FieldPoint FieldPoint::at(const SphericalPoint& p, const SpheroidGeometry& geom) {
  return {p.r, p.theta, p.phi, p.r < geom.radius_m ? Region::Inside : Region::Outside};
}

FieldPoint FieldPoint::at(const Vec3& p, const SpheroidGeometry& geom) {
  return at(SphericalPoint::from_cartesian(p), geom);
}

FieldPoint FieldPoint::on_boundary(double theta, double phi, Region side,
                                   const SpheroidGeometry& geom) {
  return {geom.radius_m, theta, phi, side};
}

Wavenumbers wavenumbers(double omega, const MediumModel& medium) {
  const Complex iw{0.0, omega};
  return {std::sqrt(iw / medium.d_free), std::sqrt((iw - medium.sink_at(omega)) / medium.d_eff)};
}

// ---------------------------------------------------------------------------
// ModeSet
// ---------------------------------------------------------------------------

ModeSet::ModeSet(double omega, const SpheroidGeometry& geom, const MediumModel& medium, int n_max)
    : ModeSet(omega, geom, medium, n_max, wavenumbers(omega, medium)) {}

ModeSet::ModeSet(double omega, const SpheroidGeometry& geom, const MediumModel& medium, int n_max,
                 Wavenumbers k)
    : omega_(omega), radius_(geom.radius_m), r_tx_(geom.tx_position.r), k_(k) {
  if (n_max < 0) {
    throw std::invalid_argument("ModeSet: n_max must be non-negative");
  }
  if (!(r_tx_ > radius_)) {
    throw std::invalid_argument("ModeSet: transmitter must lie outside the spheroid");
  }
  if (k_.k1 == Complex{0.0, 0.0} || k_.k2 == Complex{0.0, 0.0}) {
    throw std::domain_error(
        "ModeSet: zero wavenumber (omega = 0 without a sink); evaluate on the offset grid");
  }
  k_.k1 = decaying_branch(k_.k1);
  modes_.resize(static_cast<std::size_t>(n_max) + 1);
  build(medium);
}

void ModeSet::build(const MediumModel& medium) {
  const int n_max = this->n_max();
  const Complex kappa1 = kI * k_.k1;
  const Complex kappa2 = kI * k_.k2;

  auto j1_rs = specfun::sph_bessel_j_table(n_max + 1, kappa1 * radius_);
  j1_tx_ = specfun::sph_bessel_j_table(n_max + 1, kappa1 * r_tx_);
  h1_rs_ = specfun::sph_hankel_out_table(n_max + 1, kappa1 * radius_);
  h1_tx_ = specfun::sph_hankel_out_table(n_max + 1, kappa1 * r_tx_);
  j2_rs_ = specfun::sph_bessel_j_table(n_max + 1, kappa2 * radius_);

  const auto dj1_rs = specfun::derivative_table(j1_rs, kappa1 * radius_);
  const auto dj1_tx = specfun::derivative_table(j1_tx_, kappa1 * r_tx_);
  const auto dh1_rs = specfun::derivative_table(h1_rs_, kappa1 * radius_);
  const auto dh1_tx = specfun::derivative_table(h1_tx_, kappa1 * r_tx_);
  const auto dj2_rs = specfun::derivative_table(j2_rs_, kappa2 * radius_);

  const double d = medium.d_free;
  const double d_eff = medium.d_eff;
  const double jump = medium.jump_k;
  const double r2 = r_tx_ * r_tx_;

  for (int n = 0; n <= n_max; ++n) {
    const Complex us_prime = kappa2 * specfun::ratio(dj2_rs[n], j2_rs_[n]);
    const Complex j_rs = specfun::ratio(j1_rs[n], j1_tx_[n]);
    const Complex dj_rs = kappa1 * specfun::ratio(dj1_rs[n], j1_tx_[n]);
    const Complex dh_rs = kappa1 * specfun::ratio(dh1_rs[n], h1_rs_[n]);
    const Complex h_tx = specfun::ratio(h1_tx_[n], h1_rs_[n]);
    const Complex dh_tx_rs = kappa1 * specfun::ratio(dh1_tx[n], h1_rs_[n]);
    const Complex dj_tx = kappa1 * specfun::ratio(dj1_tx[n], j1_tx_[n]);
    const Complex dh_tx = kappa1 * specfun::ratio(dh1_tx[n], h1_tx_[n]);

    // Unknowns (g, a, b, d).
    Eigen::Matrix4cd m;
    Eigen::Vector4cd rhs;
    m << Complex{1.0}, -jump, -jump * j_rs, Complex{0.0},                    // c_s = k c_o
        d_eff * us_prime, -d * dh_rs, -d * dj_rs, Complex{0.0},              // flux
        Complex{0.0}, h_tx, Complex{1.0}, Complex{-1.0},                     // continuity
        Complex{0.0}, -r2 * dh_tx_rs, -r2 * dj_tx, r2 * dh_tx;               // source jump
    rhs << Complex{0.0}, Complex{0.0}, Complex{0.0}, Complex{-1.0 / d};

    for (int row = 0; row < 4; ++row) {
      const double s = m.row(row).cwiseAbs().maxCoeff();
      m.row(row) /= s;
      rhs(row) /= s;
    }
    const Eigen::PartialPivLU<Eigen::Matrix4cd> lu(m);
    const Eigen::Matrix4cd inv = lu.inverse();
    const double cond = m.cwiseAbs().colwise().sum().maxCoeff() *
                        inv.cwiseAbs().colwise().sum().maxCoeff();
    if (!std::isfinite(cond) || cond > kMaxCondition) {
      throw SingularSystemError(n, omega_, cond);
    }
    const Eigen::Vector4cd x = lu.solve(rhs);

    ModeSolution& s = modes_[n];
    s.n = n;
    s.omega = omega_;
    s.k1 = k_.k1;
    s.k2 = k_.k2;
    s.g_n = x(0);
    s.a_n = x(1);
    s.b_n = x(2);
    s.d_n = x(3);
    s.condition = cond;
  }
}

std::vector<Complex> ModeSet::radial_values(double r, Region side) const {
  const int n_max = this->n_max();
  std::vector<Complex> out(static_cast<std::size_t>(n_max) + 1, Complex{0.0, 0.0});
  const Complex kappa1 = kI * k_.k1;
  const Complex kappa2 = kI * k_.k2;

  const bool inside = r < radius_ || (r == radius_ && side == Region::Inside);
  if (inside) {
    if (r == 0.0) {
      out[0] = modes_[0].g_n * specfun::ratio(ScaledComplex{1.0}, j2_rs_[0]);
      return out;
    }
    const auto j = specfun::sph_bessel_j_table(n_max, kappa2 * r);
    for (int n = 0; n <= n_max; ++n) {
      out[n] = modes_[n].g_n * specfun::ratio(j[n], j2_rs_[n]);
    }
    return out;
  }

  const bool shell = r < r_tx_ || (r == r_tx_ && side == Region::Inside);
  const auto h = specfun::sph_hankel_out_table(n_max, kappa1 * r);
  if (shell) {
    const auto j = specfun::sph_bessel_j_table(n_max, kappa1 * r);
    for (int n = 0; n <= n_max; ++n) {
      out[n] = modes_[n].b_n * specfun::ratio(j[n], j1_tx_[n]) +
               modes_[n].a_n * specfun::ratio(h[n], h1_rs_[n]);
    }
    return out;
  }
  for (int n = 0; n <= n_max; ++n) {
    out[n] = modes_[n].d_n * specfun::ratio(h[n], h1_tx_[n]);
  }
  return out;
}

Complex ModeSet::interior_volume_integral() const {
  // int_0^R j_0(kappa r) r^2 dr = R^2 j_1(kappa R) / kappa
  const Complex kappa2 = kI * k_.k2;
  return modes_[0].g_n * radius_ * radius_ * specfun::ratio(j2_rs_[1], j2_rs_[0]) / kappa2;
}

ModeSolution mode_coefficients(int n, double omega, const SpheroidGeometry& geom,
                               const MediumModel& medium) {
  if (n < 0) {
    throw std::invalid_argument("mode_coefficients: n must be non-negative");
  }
  geom.validate();
  return ModeSet(omega, geom, medium, n).mode(n);
}

// ---------------------------------------------------------------------------
// Independent radial evaluation and residuals
// ---------------------------------------------------------------------------

RadialValue radial_function(const ModeSolution& s, double r, Region side,
                            const SpheroidGeometry& geom) {
  const int n = s.n;
  const double rs = geom.radius_m;
  const double rt = geom.tx_position.r;
  const Complex kappa1 = kI * decaying_branch(s.k1);
  const Complex kappa2 = kI * s.k2;
  using specfun::sph_bessel_j;
  using specfun::sph_bessel_j_deriv;
  using specfun::sph_hankel_out;
  using specfun::sph_hankel_out_deriv;

  const bool inside = r < rs || (r == rs && side == Region::Inside);
  if (inside) {
    const Complex norm = s.g_n / sph_bessel_j(n, kappa2 * rs);
    return {norm * sph_bessel_j(n, kappa2 * r), norm * kappa2 * sph_bessel_j_deriv(n, kappa2 * r)};
  }
  const bool shell = r < rt || (r == rt && side == Region::Inside);
  if (shell) {
    const Complex bj = s.b_n / sph_bessel_j(n, kappa1 * rt);
    const Complex ah = s.a_n / sph_hankel_out(n, kappa1 * rs);
    return {bj * sph_bessel_j(n, kappa1 * r) + ah * sph_hankel_out(n, kappa1 * r),
            kappa1 * (bj * sph_bessel_j_deriv(n, kappa1 * r) +
                      ah * sph_hankel_out_deriv(n, kappa1 * r))};
  }
  const Complex dh = s.d_n / sph_hankel_out(n, kappa1 * rt);
  return {dh * sph_hankel_out(n, kappa1 * r), dh * kappa1 * sph_hankel_out_deriv(n, kappa1 * r)};
}

double ModeResiduals::max() const { return std::max({flux, jump, continuity, source}); }

ModeResiduals mode_residuals(const ModeSolution& s, const SpheroidGeometry& geom,
                             const MediumModel& medium) {
  const double rs = geom.radius_m;
  const double rt = geom.tx_position.r;
  const RadialValue in_rs = radial_function(s, rs, Region::Inside, geom);
  const RadialValue out_rs = radial_function(s, rs, Region::Outside, geom);
  const RadialValue below_tx = radial_function(s, rt, Region::Inside, geom);
  const RadialValue above_tx = radial_function(s, rt, Region::Outside, geom);

  auto rel = [](Complex lhs, Complex rhs) {
    const double scale = std::abs(lhs) + std::abs(rhs);
    return scale > 0.0 ? std::abs(lhs - rhs) / scale : 0.0;
  };
  ModeResiduals res;
  res.flux = rel(medium.d_eff * in_rs.derivative, medium.d_free * out_rs.derivative);
  res.jump = rel(in_rs.value, medium.jump_k * out_rs.value);
  res.continuity = rel(below_tx.value, above_tx.value);
  const Complex lhs = rt * rt * (above_tx.derivative - below_tx.derivative);
  const Complex rhs{-1.0 / medium.d_free, 0.0};
  const double scale = rt * rt * (std::abs(above_tx.derivative) + std::abs(below_tx.derivative)) +
                       std::abs(rhs);
  res.source = std::abs(lhs - rhs) / scale;
  return res;
}

// ---------------------------------------------------------------------------
// Series evaluation
// ---------------------------------------------------------------------------

SeriesValue cgf_frequency(const FieldPoint& point, double omega, const SpheroidGeometry& geom,
                          const MediumModel& medium, const TruncationPolicy& policy,
                          bool general_m) {
  const Vec3 p = point.spherical().cartesian();
  const Vec3 tx = geom.tx_position.cartesian();
  if ((p - tx).norm() <= 1e-12 * geom.tx_position.r) {
    throw std::invalid_argument("cgf_frequency: field point coincides with the transmitter");
  }
  const double cos_gamma = cos_angle_between(point.spherical(), geom.tx_position);
  int n_try = initial_mode_guess(point.r, geom, policy);
  SeriesValue result;
  while (true) {
    const ModeSet modes(omega, geom, medium, n_try);
    const auto radial = modes.radial_values(point.r, point.region);
    const auto weights = general_m ? general_weights(n_try, point, geom.tx_position)
                                   : axial_weights(n_try, cos_gamma);
    if (sum_series(radial, weights, policy, result)) {
      return result;
    }
    if (n_try >= policy.n_cap) {
      throw TruncationError(n_try, result.tail, omega);
    }
    n_try = std::min(policy.n_cap, 2 * n_try);
  }
}

Complex free_space_cgf_frequency(const Vec3& point, double omega, double d_free, const Vec3& tx) {
  const double d = (point - tx).norm();
  const Complex k1 = std::sqrt(Complex{0.0, omega} / d_free);
  return std::exp(-k1 * d) / (4.0 * kPi * d_free * d);
}

double free_space_cgf(const Vec3& point, double t, double d_free, const SphericalPoint& tx) {
  if (!(t > 0.0)) {
    throw std::invalid_argument("free_space_cgf: t must be positive");
  }
  const double d2 = (point - tx.cartesian()).norm2();
  return std::pow(4.0 * kPi * d_free * t, -1.5) * std::exp(-d2 / (4.0 * d_free * t));
}

// ---------------------------------------------------------------------------
// Time domain
// ---------------------------------------------------------------------------

void FrequencyGrid::validate() const {
  if (!(omega_max > 0.0)) {
    throw std::invalid_argument("frequency grid: omega_max must be positive");
  }
  if (n_samples < 2 || (n_samples & (n_samples - 1)) != 0) {
    throw std::invalid_argument("frequency grid: n_samples must be a power of two >= 2");
  }
  if (!(aliasing_tol > 0.0)) {
    throw std::invalid_argument("frequency grid: aliasing tolerance must be positive");
  }
}

TimeSeries invert_spectrum(std::span<const Complex> spectrum, const FrequencyGrid& fgrid,
                           const TimeGrid& times) {
  fgrid.validate();
  if (spectrum.size() != fgrid.n_samples) {
    throw std::invalid_argument("invert_spectrum: spectrum length does not match the grid");
  }
  double peak = 0.0;
  for (const Complex& c : spectrum) peak = std::max(peak, std::abs(c));
  if (peak > 0.0) {
    const double edge = std::abs(spectrum.back()) / peak;
    if (edge > fgrid.aliasing_tol) {
      throw AliasingError(edge, fgrid.aliasing_tol);
    }
  }

  TimeSeries out;
  out.t0 = times.t0;
  out.dt_sample = times.dt;
  out.values.resize(times.count);
  const double dw = fgrid.spacing();
  constexpr std::size_t kReanchor = 512;
  for (std::size_t i = 0; i < times.count; ++i) {
    const double t = times.at(i);
    const Complex step = std::polar(1.0, dw * t);
    double acc = 0.0;
    Complex phasor;
    for (std::size_t j = 0; j < spectrum.size(); ++j) {
      if (j % kReanchor == 0) {
        phasor = std::polar(1.0, fgrid.omega(j) * t);
      }
      acc += spectrum[j].real() * phasor.real() - spectrum[j].imag() * phasor.imag();
      phasor *= step;
    }
    out.values[i] = acc * dw / kPi;
  }
  return out;
}

std::vector<TimeSeries> cgf_time(std::span<const FieldPoint> points, const TimeGrid& times,
                                 const SpheroidGeometry& geom, const MediumModel& medium,
                                 const FrequencyGrid& fgrid, const TruncationPolicy& policy) {
  geom.validate();
  medium.validate();
  fgrid.validate();
  const Vec3 tx = geom.tx_position.cartesian();
  std::vector<double> cos_gamma;
  int n_try = 8;
  for (const FieldPoint& p : points) {
    if ((p.spherical().cartesian() - tx).norm() <= 1e-12 * geom.tx_position.r) {
      throw std::invalid_argument("cgf_time: field point coincides with the transmitter");
    }
    cos_gamma.push_back(cos_angle_between(p.spherical(), geom.tx_position));
    n_try = std::max(n_try, initial_mode_guess(p.r, geom, policy));
  }

  std::vector<std::vector<Complex>> spectra(points.size(), std::vector<Complex>(fgrid.n_samples));
  std::vector<std::vector<double>> weights;
  auto refresh_weights = [&] {
    weights.clear();
    for (double c : cos_gamma) weights.push_back(axial_weights(n_try, c));
  };
  refresh_weights();
  for (std::size_t j = 0; j < fgrid.n_samples; ++j) {
    const double omega = fgrid.omega(j);
    while (true) {
      const ModeSet modes(omega, geom, medium, n_try);
      bool all_converged = true;
      SeriesValue sv;
      for (std::size_t i = 0; i < points.size() && all_converged; ++i) {
        const auto radial = modes.radial_values(points[i].r, points[i].region);
        all_converged = sum_series(radial, weights[i], policy, sv);
        spectra[i][j] = sv.value;
      }
      if (all_converged) break;
      if (n_try >= policy.n_cap) {
        throw TruncationError(n_try, sv.tail, omega);
      }
      n_try = std::min(policy.n_cap, 2 * n_try);
      refresh_weights();
    }
  }

  std::vector<TimeSeries> out;
  out.reserve(points.size());
  for (const auto& spectrum : spectra) {
    TimeSeries ts = invert_spectrum(spectrum, fgrid, times);
    ts.unit = Unit::Concentration;
    ts.provenance = Provenance::Analytic;
    out.push_back(std::move(ts));
  }
  return out;
}

TimeSeries cgf_time(const FieldPoint& point, const TimeGrid& times, const SpheroidGeometry& geom,
                    const MediumModel& medium, const FrequencyGrid& fgrid,
                    const TruncationPolicy& policy) {
  return cgf_time(std::span<const FieldPoint>(&point, 1), times, geom, medium, fgrid, policy)
      .front();
}

TimeSeries received_signal_analytic(const TimeGrid& times, const SpheroidGeometry& geom,
                                    const MediumModel& medium, const FrequencyGrid& fgrid) {
  geom.validate();
  medium.validate();
  fgrid.validate();
  if (medium.k_f == 0.0) {
    return {times.t0, times.dt, std::vector<double>(times.count, 0.0), Unit::Rate,
            Provenance::Analytic};
  }
  std::vector<Complex> spectrum(fgrid.n_samples);
  for (std::size_t j = 0; j < fgrid.n_samples; ++j) {
    const ModeSet modes(fgrid.omega(j), geom, medium, 0);
    spectrum[j] = medium.k_f * modes.interior_volume_integral();
  }
  TimeSeries ts = invert_spectrum(spectrum, fgrid, times);
  ts.unit = Unit::Rate;
  ts.provenance = Provenance::Analytic;
  return ts;
}

std::vector<TimeSeries> interior_angular_mean(std::span<const double> radii, const TimeGrid& times,
                                              const SpheroidGeometry& geom,
                                              const MediumModel& medium,
                                              const FrequencyGrid& fgrid) {
  geom.validate();
  medium.validate();
  fgrid.validate();
  for (double r : radii) {
    if (!(r >= 0.0) || r > geom.radius_m) {
      throw std::invalid_argument("interior_angular_mean: radii must lie in [0, R_s]");
    }
  }
  std::vector<std::vector<Complex>> spectra(radii.size(), std::vector<Complex>(fgrid.n_samples));
  for (std::size_t j = 0; j < fgrid.n_samples; ++j) {
    const ModeSet modes(fgrid.omega(j), geom, medium, 0);
    for (std::size_t i = 0; i < radii.size(); ++i) {
      spectra[i][j] = modes.radial_values(radii[i], Region::Inside)[0] / (4.0 * kPi);
    }
  }
  std::vector<TimeSeries> out;
  for (const auto& s : spectra) {
    TimeSeries ts = invert_spectrum(s, fgrid, times);
    ts.unit = Unit::Concentration;
    out.push_back(std::move(ts));
  }
  return out;
}

}  // namespace spheroid::analytic
