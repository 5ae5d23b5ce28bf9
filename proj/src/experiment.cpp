#include "spheroid/experiment.hpp"

#include <fmt/format.h>

#include <cmath>

#include "spheroid/csv.hpp"

namespace spheroid {

namespace {

ModelSummary summary_of(const MediumModel& m) {
  return {m.porosity, m.tortuosity, m.d_eff, m.jump_k};
}

std::filesystem::path write_series(const RunOptions& opt, const std::string& stem,
                                   const TimeSeries& s, const std::string& probe_id,
                                   const csv::Header& h) {
  const auto path = opt.out_dir / (stem + ".csv");
  csv::write_file(path, csv::format_series(s, probe_id, h));
  return path;
}

}  // namespace

ModelSummary summarize_model(const ExperimentConfig& config) {
  return summary_of(config.medium());
}

std::vector<SweepRow> sweep_table(const ExperimentConfig& config) {
  if (!config.sweep) throw std::invalid_argument("sweep: section required");
  const auto& s = *config.sweep;
  if (s.n_cells_step <= 0) throw std::invalid_argument("sweep.n_cells_step: must be > 0");
  std::vector<SweepRow> rows;
  for (std::int64_t n = s.n_cells_min; n <= s.n_cells_max; n += s.n_cells_step) {
    SpheroidGeometry g = config.geom;
    g.n_cells = n;
    rows.push_back({n, summary_of(MediumModel::for_geometry(g, config.d_free, config.k_f))});
  }
  return rows;
}

std::vector<NamedSeries> analytic_probe_series(const ExperimentConfig& config,
                                               const MediumModel& medium) {
  if (!config.analytic) throw std::invalid_argument("analytic: section required");
  std::vector<analytic::FieldPoint> points;
  std::vector<std::string> ids;
  for (const auto& p : config.probes) {
    if (pbs::straddles_interface(p, config.geom)) {
      const auto sp = SphericalPoint::from_cartesian(p.center);
      for (auto [side, suffix] : {std::pair{analytic::Region::Inside, ":in"},
                                  std::pair{analytic::Region::Outside, ":out"}}) {
        points.push_back(analytic::FieldPoint::on_boundary(sp.theta, sp.phi, side, config.geom));
        ids.push_back(p.id + suffix);
      }
    } else {
      points.push_back(analytic::FieldPoint::at(p.center, config.geom));
      ids.push_back(p.id);
    }
  }
  const auto& a = *config.analytic;
  auto series = analytic::cgf_time(points, a.time_grid(), config.geom, medium, a.frequency_grid(),
                                   a.truncation());
  std::vector<NamedSeries> out;
  for (std::size_t i = 0; i < ids.size(); ++i) out.push_back({ids[i], std::move(series[i])});
  return out;
}

std::vector<NamedSeries> pbs_series(const ExperimentConfig& config, const MediumModel& medium) {
  if (!config.pbs) throw std::invalid_argument("pbs: section required");
  auto result = pbs::run_simulation(config.sim_config(medium));
  std::vector<NamedSeries> out;
  for (auto& p : result.probes) out.push_back({p.id, std::move(p.series)});
  out.push_back({"absorption_rate", std::move(result.absorption_rate)});
  return out;
}

CompareResult compare_curves(const ExperimentConfig& config, double pbs_bin_s) {
  if (!config.analytic) throw std::invalid_argument("analytic: section required");
  const MediumModel spheroid = config.medium();
  const MediumModel transparent = spheroid.transparent();
  const auto& a = *config.analytic;
  CompareResult r;
  r.analytic_spheroid =
      analytic::received_signal_analytic(a.time_grid(), config.geom, spheroid, a.frequency_grid());
  r.analytic_transparent = analytic::received_signal_analytic(a.time_grid(), config.geom,
                                                              transparent, a.frequency_grid());
  if (config.pbs) {
    const auto factor = static_cast<std::size_t>(
        std::max<long long>(1, std::llround(pbs_bin_s / config.pbs->dt)));
    auto sim = [&](const MediumModel& m) {
      ExperimentConfig c = config;
      c.probes.clear();
      return signal::rebin(pbs::run_simulation(c.sim_config(m)).absorption_rate, factor);
    };
    r.pbs_spheroid = sim(spheroid);
    r.pbs_transparent = sim(transparent);
  }
  return r;
}

RunReport run(Mode mode, const ExperimentConfig& config, const RunOptions& opt, std::ostream& log) {
  validate_for_mode(config, mode);
  RunReport report;
  csv::Header header;
  header.config_hash = config.hash();
  if (!opt.quiet) log << "# resolved configuration (sha256 " << header.config_hash << ")\n"
                      << config.canonical() << "\n";

  switch (mode) {
    case Mode::Model: {
      const auto m = summarize_model(config);
      log << fmt::format("porosity eps   = {:.6g}\n", m.porosity)
          << fmt::format("tortuosity tau = {:.6g}\n", m.tortuosity)
          << fmt::format("D_eff          = {:.6g} m^2/s\n", m.d_eff)
          << fmt::format("jump k         = {:.6g}\n", m.jump_k);
      break;
    }
    case Mode::Sweep: {
      std::vector<std::vector<std::string>> rows;
      for (const auto& r : sweep_table(config))
        rows.push_back({std::to_string(r.n_cells), csv::number(r.model.porosity),
                        csv::number(r.model.tortuosity), csv::number(r.model.d_eff),
                        csv::number(r.model.jump_k)});
      header.description = "porosity and jump constant versus cell count";
      const auto path = opt.out_dir / "sweep.csv";
      csv::write_file(path, csv::format_table({"n_cells", "porosity", "tortuosity",
                                               "d_eff_m2_s", "jump_k"},
                                              rows, header));
      report.artifacts.push_back(path);
      break;
    }
    case Mode::Analytic: {
      const MediumModel medium = config.medium();
      header.description = "analytic concentration Green's function per released molecule";
      for (const auto& s : analytic_probe_series(config, medium))
        report.artifacts.push_back(
            write_series(opt, "analytic_" + csv::file_stem(s.id), s.series, s.id, header));
      if (config.k_f > 0.0) {
        const auto& a = *config.analytic;
        header.description = "analytic receiver generation rate per released molecule";
        const auto rate = analytic::received_signal_analytic(a.time_grid(), config.geom, medium,
                                                             a.frequency_grid());
        report.artifacts.push_back(
            write_series(opt, "analytic_received_rate", rate, "receiver", header));
      }
      break;
    }
    case Mode::Pbs: {
      header.seed = config.pbs->seed;
      header.description = "particle simulation, values normalised per released molecule";
      for (const auto& s : pbs_series(config, config.medium()))
        report.artifacts.push_back(
            write_series(opt, "pbs_" + csv::file_stem(s.id), s.series, s.id, header));
      break;
    }
    case Mode::Compare: {
      if (config.pbs) header.seed = config.pbs->seed;
      const auto curves = compare_curves(config);
      header.description = "receiver generation rate, spheroid versus transparent receiver";
      report.artifacts.push_back(write_series(opt, "compare_analytic_spheroid",
                                              curves.analytic_spheroid, "spheroid", header));
      report.artifacts.push_back(write_series(opt, "compare_analytic_transparent",
                                              curves.analytic_transparent, "transparent", header));
      if (curves.pbs_spheroid) {
        report.artifacts.push_back(write_series(opt, "compare_pbs_spheroid", *curves.pbs_spheroid,
                                                "spheroid", header));
        report.artifacts.push_back(write_series(opt, "compare_pbs_transparent",
                                                *curves.pbs_transparent, "transparent", header));
      }
      std::vector<std::vector<std::string>> rows;
      auto add = [&](const std::string& path, const TimeSeries& s, const TimeSeries& t) {
        const auto c = signal::compare_receivers(s, t);
        rows.push_back({path, csv::number(c.amplification), csv::number(c.peak_delay),
                        csv::number(c.width_ratio), csv::number(c.spheroid.peak_value),
                        csv::number(c.spheroid.peak_time), csv::number(c.spheroid.fwhm),
                        csv::number(c.transparent.peak_value),
                        csv::number(c.transparent.peak_time), csv::number(c.transparent.fwhm)});
        if (!opt.quiet)
          log << fmt::format("{}: amplification {:.4g}, peak delay {:.4g} s, width ratio {:.4g}\n",
                             path, c.amplification, c.peak_delay, c.width_ratio);
      };
      add("analytic", curves.analytic_spheroid, curves.analytic_transparent);
      if (curves.pbs_spheroid) add("pbs", *curves.pbs_spheroid, *curves.pbs_transparent);
      header.description = "receiver comparison metrics";
      const auto path = opt.out_dir / "compare_metrics.csv";
      csv::write_file(path, csv::format_table({"path", "amplification", "peak_delay_s",
                                               "width_ratio", "spheroid_peak_s^-1",
                                               "spheroid_peak_time_s", "spheroid_fwhm_s",
                                               "transparent_peak_s^-1",
                                               "transparent_peak_time_s", "transparent_fwhm_s"},
                                              rows, header));
      report.artifacts.push_back(path);
      break;
    }
  }
  if (!opt.quiet)
    for (const auto& a : report.artifacts) log << "wrote " << a.string() << "\n";
  return report;
}

}  // namespace spheroid
