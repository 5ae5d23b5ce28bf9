#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "spheroid/analytic.hpp"
#include "spheroid/config.hpp"
#include "spheroid/experiment.hpp"
#include "spheroid/model.hpp"
#include "spheroid/pbs.hpp"
#include "spheroid/signal.hpp"
#include "spheroid/specfun.hpp"

namespace py = pybind11;
using namespace spheroid;

namespace {

SpheroidGeometry make_geometry(double radius_m, std::int64_t n_cells, double cell_volume_m3,
                               double tx_r, double tx_theta, double tx_phi) {
  SpheroidGeometry g{radius_m, n_cells, cell_volume_m3, {tx_r, tx_theta, tx_phi}};
  g.validate();
  return g;
}

}  // namespace

PYBIND11_MODULE(_spheroid, m) {
  m.doc() = "Analytic and particle-based models of diffusion to a porous spheroid";
  m.attr("__version__") = "0.1.0";

  py::register_exception<analytic::SingularSystemError>(m, "SingularSystemError");
  py::register_exception<analytic::TruncationError>(m, "TruncationError");
  py::register_exception<analytic::AliasingError>(m, "AliasingError");
  py::register_exception<signal::NoPeakError>(m, "NoPeakError");
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  // model
  m.def("porosity", &spheroid::porosity, py::arg("n_cells"), py::arg("cell_volume_m3"),
        py::arg("radius_m"));
  m.def("tortuosity", &spheroid::tortuosity, py::arg("porosity"));
  m.def("effective_diffusion", &spheroid::effective_diffusion, py::arg("d_free"),
        py::arg("porosity"));
  m.def("boundary_jump", &spheroid::boundary_jump, py::arg("d_free"), py::arg("d_eff"));

  py::class_<SpheroidGeometry>(m, "Geometry")
      .def(py::init(&make_geometry), py::arg("radius_m"), py::arg("n_cells"),
           py::arg("cell_volume_m3"), py::arg("tx_r_m"), py::arg("tx_theta_rad") = kPi / 2,
           py::arg("tx_phi_rad") = 0.0)
      .def_readonly("radius_m", &SpheroidGeometry::radius_m)
      .def_readonly("n_cells", &SpheroidGeometry::n_cells)
      .def_readonly("cell_volume_m3", &SpheroidGeometry::cell_volume_m3)
      .def_property_readonly("tx_cartesian",
                             [](const SpheroidGeometry& g) {
                               const Vec3 p = g.tx_position.cartesian();
                               return std::array<double, 3>{p.x, p.y, p.z};
                             })
      .def_property_readonly("volume", &SpheroidGeometry::volume);

  py::class_<MediumModel>(m, "Medium")
      .def_static("for_geometry", &MediumModel::for_geometry, py::arg("geometry"),
                  py::arg("d_free"), py::arg("k_f") = 0.0)
      .def_static("from_porosity", &MediumModel::from_porosity, py::arg("d_free"),
                  py::arg("porosity"), py::arg("k_f") = 0.0)
      .def("transparent", &MediumModel::transparent)
      .def_readonly("d_free", &MediumModel::d_free)
      .def_readonly("porosity", &MediumModel::porosity)
      .def_readonly("tortuosity", &MediumModel::tortuosity)
      .def_readonly("d_eff", &MediumModel::d_eff)
      .def_readonly("jump_k", &MediumModel::jump_k)
      .def_readonly("k_f", &MediumModel::k_f);

  py::class_<TimeSeries>(m, "TimeSeries")
      .def_readonly("t0", &TimeSeries::t0)
      .def_readonly("dt", &TimeSeries::dt_sample)
      .def_readonly("values", &TimeSeries::values)
      .def_property_readonly("unit", [](const TimeSeries& s) { return std::string(to_string(s.unit)); })
      .def_property_readonly("provenance",
                             [](const TimeSeries& s) { return std::string(to_string(s.provenance)); })
      .def("times", &TimeSeries::times)
      .def("__len__", &TimeSeries::size);

  // special functions
  m.def("sph_bessel_j", &specfun::sph_bessel_j, py::arg("n"), py::arg("z"));
  m.def("sph_bessel_y", &specfun::sph_bessel_y, py::arg("n"), py::arg("z"));
  m.def("sph_hankel_out", &specfun::sph_hankel_out, py::arg("n"), py::arg("z"));

  // analytic
  py::class_<analytic::FrequencyGrid>(m, "FrequencyGrid")
      .def(py::init([](double omega_max, std::size_t n_samples, double aliasing_tol) {
             analytic::FrequencyGrid g{omega_max, n_samples, aliasing_tol};
             g.validate();
             return g;
           }),
           py::arg("omega_max") = 4.0 * kPi, py::arg("n_samples") = 1u << 14,
           py::arg("aliasing_tol") = 1e-6)
      .def_property_readonly("period", &analytic::FrequencyGrid::period);

  m.def(
      "cgf_time",
      [](const std::vector<std::array<double, 3>>& points, double t0, double dt, std::size_t count,
         const SpheroidGeometry& geom, const MediumModel& medium,
         const analytic::FrequencyGrid& fgrid) {
        std::vector<analytic::FieldPoint> fp;
        for (const auto& p : points) fp.push_back(analytic::FieldPoint::at(Vec3{p[0], p[1], p[2]}, geom));
        py::gil_scoped_release release;
        return analytic::cgf_time(fp, TimeGrid{t0, dt, count}, geom, medium, fgrid);
      },
      py::arg("points"), py::arg("t0"), py::arg("dt"), py::arg("count"), py::arg("geometry"),
      py::arg("medium"), py::arg("frequency_grid") = analytic::FrequencyGrid{},
      "Concentration Green's function at Cartesian points (m) on t0 + i*dt.");
  m.def(
      "free_space_cgf",
      [](const std::array<double, 3>& p, double t, double d_free, const SpheroidGeometry& geom) {
        return analytic::free_space_cgf(Vec3{p[0], p[1], p[2]}, t, d_free, geom.tx_position);
      },
      py::arg("point"), py::arg("t"), py::arg("d_free"), py::arg("geometry"));
  m.def(
      "received_rate",
      [](double t0, double dt, std::size_t count, const SpheroidGeometry& geom,
         const MediumModel& medium, const analytic::FrequencyGrid& fgrid) {
        py::gil_scoped_release release;
        return analytic::received_signal_analytic(TimeGrid{t0, dt, count}, geom, medium, fgrid);
      },
      py::arg("t0"), py::arg("dt"), py::arg("count"), py::arg("geometry"), py::arg("medium"),
      py::arg("frequency_grid") = analytic::FrequencyGrid{});
  m.def(
      "mode_residual",
      [](int n, double omega, const SpheroidGeometry& geom, const MediumModel& medium) {
        const auto sol = analytic::mode_coefficients(n, omega, geom, medium);
        return analytic::mode_residuals(sol, geom, medium).max();
      },
      py::arg("n"), py::arg("omega"), py::arg("geometry"), py::arg("medium"));

  // particle simulation
  m.def(
      "simulate",
      [](const SpheroidGeometry& geom, const MediumModel& medium, std::uint64_t n_particles,
         double t_end, double dt, std::uint64_t seed,
         const std::vector<std::tuple<std::string, std::array<double, 3>, double>>& probes,
         std::uint32_t stride, int workers) {
        pbs::SimConfig c;
        c.geom = geom;
        c.medium = medium;
        c.n_particles = n_particles;
        c.t_end = t_end;
        c.dt = dt;
        c.seed = seed;
        c.stride = stride;
        c.workers = workers;
        for (const auto& [id, p, r] : probes) c.probes.push_back({id, {p[0], p[1], p[2]}, r});
        pbs::SimResult res;
        {
          py::gil_scoped_release release;
          res = pbs::run_simulation(c);
        }
        py::dict out;
        py::dict series;
        py::dict counts;
        for (const auto& p : res.probes) {
          series[py::str(p.id)] = p.series;
          counts[py::str(p.id)] = p.counts;
        }
        out["probes"] = series;
        out["counts"] = counts;
        out["absorption_rate"] = res.absorption_rate;
        out["absorbed"] = res.final_ensemble.absorbed_count();
        return out;
      },
      py::arg("geometry"), py::arg("medium"), py::arg("n_particles"), py::arg("t_end"),
      py::arg("dt") = 0.05, py::arg("seed") = 0,
      py::arg("probes") = std::vector<std::tuple<std::string, std::array<double, 3>, double>>{},
      py::arg("stride") = 1, py::arg("workers") = 0);

  // signal
  py::class_<signal::PeakMetrics>(m, "PeakMetrics")
      .def_readonly("peak_value", &signal::PeakMetrics::peak_value)
      .def_readonly("peak_time", &signal::PeakMetrics::peak_time)
      .def_readonly("fwhm", &signal::PeakMetrics::fwhm)
      .def_readonly("clipped", &signal::PeakMetrics::clipped);
  py::class_<signal::ReceiverComparison>(m, "ReceiverComparison")
      .def_readonly("amplification", &signal::ReceiverComparison::amplification)
      .def_readonly("peak_delay", &signal::ReceiverComparison::peak_delay)
      .def_readonly("width_ratio", &signal::ReceiverComparison::width_ratio)
      .def_readonly("spheroid", &signal::ReceiverComparison::spheroid)
      .def_readonly("transparent", &signal::ReceiverComparison::transparent);
  m.def("peak_metrics", &signal::peak_metrics, py::arg("series"));
  m.def("compare_receivers", &signal::compare_receivers, py::arg("spheroid_rate"),
        py::arg("transparent_rate"));
  m.def(
      "series",
      [](double t0, double dt, std::vector<double> values) {
        return TimeSeries{t0, dt, std::move(values), Unit::Rate, Provenance::Analytic};
      },
      py::arg("t0"), py::arg("dt"), py::arg("values"), "Build a rate series from samples.");

  // configuration and runs
  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def_property_readonly("geometry", [](const ExperimentConfig& c) { return c.geom; })
      .def("medium", &ExperimentConfig::medium)
      .def("canonical", &ExperimentConfig::canonical)
      .def("hash", &ExperimentConfig::hash);
  m.def(
      "parse_config",
      [](const std::filesystem::path& path, const std::optional<std::string>& mode) {
        std::optional<Mode> md;
        if (mode) {
          md = parse_mode(*mode);
          if (!md) throw py::value_error("unknown mode '" + *mode + "'");
        }
        return parse_config(path, md);
      },
      py::arg("path"), py::arg("mode") = py::none());
}
