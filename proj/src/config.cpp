#include "spheroid/config.hpp"

#include <fmt/format.h>
#include <openssl/evp.h>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace spheroid {

namespace pt = boost::property_tree;

namespace {

struct KeySpec {
  const char* name;
  bool required;
};

const std::map<std::string, std::vector<KeySpec>>& schema() {
  static const std::map<std::string, std::vector<KeySpec>> s = {
      {"geometry",
       {{"radius_m", true},
        {"n_cells", true},
        {"cell_volume_m3", true},
        {"tx_r_m", true},
        {"tx_theta_rad", true},
        {"tx_phi_rad", true}}},
      {"medium", {{"d_free_m2_s", true}, {"k_f_per_s", true}}},
      {"analytic",
       {{"omega_max_rad_s", true},
        {"n_samples", true},
        {"t_start_s", true},
        {"t_end_s", true},
        {"t_step_s", true},
        {"truncation_tol", false},
        {"aliasing_tol", false},
        {"n_cap", false}}},
      {"pbs",
       {{"dt_s", true}, {"n_particles", true}, {"seed", true}, {"t_end_s", true}, {"stride", false}}},
      {"sweep", {{"n_cells_min", true}, {"n_cells_max", true}, {"n_cells_step", true}}},
      {"run", {{"mode", true}}},
  };
  return s;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

class Reader {
 public:
  Reader(const pt::ptree& tree, std::vector<std::string>& problems)
      : tree_(tree), problems_(problems) {}

  bool has_section(const std::string& section) const {
    return tree_.find(section) != tree_.not_found();
  }

  std::optional<std::string> raw(const std::string& section, const std::string& key) const {
    const auto sec = tree_.find(section);
    if (sec == tree_.not_found()) return std::nullopt;
    const auto it = sec->second.find(key);
    if (it == sec->second.not_found()) return std::nullopt;
    return trim(it->second.data());
  }

  template <typename T>
  void get(const std::string& section, const std::string& key, T& out, bool required) {
    const auto text = raw(section, key);
    if (!text) {
      if (required) problems_.push_back(section + "." + key + ": missing required key");
      return;
    }
    T value{};
    const char* first = text->data();
    const char* last = first + text->size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || text->empty()) {
      problems_.push_back(section + "." + key + ": cannot parse '" + *text + "'");
      return;
    }
    out = value;
  }

 private:
  const pt::ptree& tree_;
  std::vector<std::string>& problems_;
};

std::vector<double> parse_list(const std::string& text, bool& ok) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  ok = true;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size() || item.empty()) ok = false;
    out.push_back(v);
  }
  return out;
}

bool needs_analytic(Mode m) { return m == Mode::Analytic || m == Mode::Compare; }
bool needs_pbs(Mode m) { return m == Mode::Pbs; }
bool needs_probes(Mode m) { return m == Mode::Analytic || m == Mode::Pbs; }

std::string g17(double v) { return fmt::format("{:.17g}", v); }

}  // namespace

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::Model: return "model";
    case Mode::Analytic: return "analytic";
    case Mode::Pbs: return "pbs";
    case Mode::Compare: return "compare";
    case Mode::Sweep: return "sweep";
  }
  return "?";
}

std::optional<Mode> parse_mode(std::string_view text) {
  for (Mode m : {Mode::Model, Mode::Analytic, Mode::Pbs, Mode::Compare, Mode::Sweep})
    if (to_string(m) == text) return m;
  return std::nullopt;
}

ConfigError::ConfigError(std::vector<std::string> p)
    : std::runtime_error([&] {
        std::string msg = "invalid configuration:";
        for (const auto& s : p) msg += "\n  " + s;
        return msg;
      }()),
      problems(std::move(p)) {}

analytic::FrequencyGrid AnalyticBlock::frequency_grid() const {
  return {omega_max, n_samples, aliasing_tol};
}

analytic::TruncationPolicy AnalyticBlock::truncation() const {
  analytic::TruncationPolicy p;
  p.rel_tol = truncation_tol;
  p.n_cap = n_cap;
  return p;
}

TimeGrid AnalyticBlock::time_grid() const { return TimeGrid::from_range(t_start, t_end, t_step); }

MediumModel ExperimentConfig::medium() const {
  return MediumModel::for_geometry(geom, d_free, k_f);
}

pbs::SimConfig ExperimentConfig::sim_config(const MediumModel& m) const {
  pbs::SimConfig c;
  c.geom = geom;
  c.medium = m;
  c.probes = probes;
  if (pbs) {
    c.dt = pbs->dt;
    c.n_particles = pbs->n_particles;
    c.seed = pbs->seed;
    c.t_end = pbs->t_end;
    c.stride = pbs->stride;
  }
  return c;
}

std::string ExperimentConfig::canonical() const {
  std::string s;
  s += "[geometry]\n";
  s += "radius_m = " + g17(geom.radius_m) + "\n";
  s += "n_cells = " + std::to_string(geom.n_cells) + "\n";
  s += "cell_volume_m3 = " + g17(geom.cell_volume_m3) + "\n";
  s += "tx_r_m = " + g17(geom.tx_position.r) + "\n";
  s += "tx_theta_rad = " + g17(geom.tx_position.theta) + "\n";
  s += "tx_phi_rad = " + g17(geom.tx_position.phi) + "\n";
  s += "\n[medium]\n";
  s += "d_free_m2_s = " + g17(d_free) + "\n";
  s += "k_f_per_s = " + g17(k_f) + "\n";
  if (analytic) {
    const auto& a = *analytic;
    s += "\n[analytic]\n";
    s += "omega_max_rad_s = " + g17(a.omega_max) + "\n";
    s += "n_samples = " + std::to_string(a.n_samples) + "\n";
    s += "t_start_s = " + g17(a.t_start) + "\n";
    s += "t_end_s = " + g17(a.t_end) + "\n";
    s += "t_step_s = " + g17(a.t_step) + "\n";
    s += "truncation_tol = " + g17(a.truncation_tol) + "\n";
    s += "aliasing_tol = " + g17(a.aliasing_tol) + "\n";
    s += "n_cap = " + std::to_string(a.n_cap) + "\n";
  }
  if (pbs) {
    const auto& p = *pbs;
    s += "\n[pbs]\n";
    s += "dt_s = " + g17(p.dt) + "\n";
    s += "n_particles = " + std::to_string(p.n_particles) + "\n";
    s += "seed = " + std::to_string(p.seed) + "\n";
    s += "t_end_s = " + g17(p.t_end) + "\n";
    s += "stride = " + std::to_string(p.stride) + "\n";
  }
  if (!probes.empty()) {
    s += "\n[probes]\n";
    for (const auto& p : probes)
      s += p.id + " = " + g17(p.center.x) + ", " + g17(p.center.y) + ", " + g17(p.center.z) +
           ", " + g17(p.radius) + "\n";
  }
  if (sweep) {
    s += "\n[sweep]\n";
    s += "n_cells_min = " + std::to_string(sweep->n_cells_min) + "\n";
    s += "n_cells_max = " + std::to_string(sweep->n_cells_max) + "\n";
    s += "n_cells_step = " + std::to_string(sweep->n_cells_step) + "\n";
  }
  if (mode) s += "\n[run]\nmode = " + std::string(to_string(*mode)) + "\n";
  return s;
}

std::string ExperimentConfig::hash() const { return sha256_hex(canonical()); }

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 digest failed");
  std::string hex;
  hex.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

ExperimentConfig parse_config(const std::filesystem::path& path, std::optional<Mode> mode) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError({"cannot open config file '" + path.string() + "'"});
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), mode);
}

ExperimentConfig parse_config_text(const std::string& text, std::optional<Mode> mode_override) {
  pt::ptree tree;
  try {
    std::istringstream in(text);
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError({fmt::format("line {}: {}", e.line(), e.message())});
  }

  std::vector<std::string> problems;
  for (const auto& [section, body] : tree) {
    const auto it = schema().find(section);
    if (section == "probes") {
      continue;
    }
    if (it == schema().end()) {
      if (body.empty() && !body.data().empty())
        problems.push_back(section + ": key outside any section");
      else
        problems.push_back(section + ": unknown section");
      continue;
    }
    for (const auto& [key, value] : body) {
      bool known = false;
      for (const auto& k : it->second) known = known || key == k.name;
      if (!known) problems.push_back(section + "." + key + ": unknown key");
    }
  }

  Reader r(tree, problems);
  ExperimentConfig c;

  std::optional<Mode> mode = mode_override;
  if (const auto m = r.raw("run", "mode")) {
    const auto parsed = parse_mode(*m);
    if (!parsed) problems.push_back("run.mode: unknown mode '" + *m + "'");
    else if (!mode) mode = parsed;
  } else if (!mode) {
    problems.push_back("run.mode: missing required key (or pass --mode)");
  }
  c.mode = mode;

  r.get("geometry", "radius_m", c.geom.radius_m, true);
  r.get("geometry", "n_cells", c.geom.n_cells, true);
  r.get("geometry", "cell_volume_m3", c.geom.cell_volume_m3, true);
  r.get("geometry", "tx_r_m", c.geom.tx_position.r, true);
  r.get("geometry", "tx_theta_rad", c.geom.tx_position.theta, true);
  r.get("geometry", "tx_phi_rad", c.geom.tx_position.phi, true);
  r.get("medium", "d_free_m2_s", c.d_free, true);
  r.get("medium", "k_f_per_s", c.k_f, true);

  const bool want_analytic = r.has_section("analytic") || (mode && needs_analytic(*mode));
  if (want_analytic) {
    AnalyticBlock a;
    r.get("analytic", "omega_max_rad_s", a.omega_max, true);
    r.get("analytic", "n_samples", a.n_samples, true);
    r.get("analytic", "t_start_s", a.t_start, true);
    r.get("analytic", "t_end_s", a.t_end, true);
    r.get("analytic", "t_step_s", a.t_step, true);
    r.get("analytic", "truncation_tol", a.truncation_tol, false);
    r.get("analytic", "aliasing_tol", a.aliasing_tol, false);
    r.get("analytic", "n_cap", a.n_cap, false);
    c.analytic = a;
  }
  const bool want_pbs = r.has_section("pbs") || (mode && needs_pbs(*mode));
  if (want_pbs) {
    PbsBlock p;
    r.get("pbs", "dt_s", p.dt, true);
    r.get("pbs", "n_particles", p.n_particles, true);
    r.get("pbs", "seed", p.seed, true);
    r.get("pbs", "t_end_s", p.t_end, true);
    r.get("pbs", "stride", p.stride, false);
    c.pbs = p;
  }
  const bool want_sweep = r.has_section("sweep") || (mode && *mode == Mode::Sweep);
  if (want_sweep) {
    SweepBlock s;
    r.get("sweep", "n_cells_min", s.n_cells_min, true);
    r.get("sweep", "n_cells_max", s.n_cells_max, true);
    r.get("sweep", "n_cells_step", s.n_cells_step, true);
    c.sweep = s;
  }

  const auto probes = tree.find("probes");
  if (probes != tree.not_found()) {
    for (const auto& [id, value] : probes->second) {
      bool ok = false;
      const auto v = parse_list(value.data(), ok);
      if (!ok || v.size() != 4) {
        problems.push_back("probes." + id + ": expected 'x_m, y_m, z_m, radius_m'");
        continue;
      }
      c.probes.push_back({id, {v[0], v[1], v[2]}, v[3]});
    }
  }
  if (mode && needs_probes(*mode) && c.probes.empty())
    problems.push_back("probes: at least one probe is required for mode " +
                       std::string(to_string(*mode)));

  if (!problems.empty()) throw ConfigError(std::move(problems));
  if (mode) validate_for_mode(c, *mode);
  return c;
}

void validate_for_mode(const ExperimentConfig& c, Mode mode) {
  std::vector<std::string> problems;
  auto guard = [&](auto&& fn) {
    try {
      fn();
    } catch (const ConfigError& e) {
      problems.insert(problems.end(), e.problems.begin(), e.problems.end());
    } catch (const std::exception& e) {
      problems.emplace_back(e.what());
    }
  };
  guard([&] { c.geom.validate(); });
  if (!(c.d_free > 0.0)) problems.emplace_back("medium.d_free_m2_s: must be > 0");
  if (!(c.k_f >= 0.0)) problems.emplace_back("medium.k_f_per_s: must be >= 0");

  if (needs_analytic(mode) && !c.analytic) problems.emplace_back("analytic: section required");
  if (needs_pbs(mode) && !c.pbs) problems.emplace_back("pbs: section required");
  if (mode == Mode::Sweep && !c.sweep) problems.emplace_back("sweep: section required");

  if (c.analytic) {
    const auto& a = *c.analytic;
    if (!(a.omega_max > 0.0)) problems.emplace_back("analytic.omega_max_rad_s: must be > 0");
    if (a.n_samples < 2 || (a.n_samples & (a.n_samples - 1)) != 0)
      problems.emplace_back("analytic.n_samples: must be a power of two >= 2");
    if (!(a.t_start > 0.0)) problems.emplace_back("analytic.t_start_s: must be > 0");
    if (!(a.t_step > 0.0)) problems.emplace_back("analytic.t_step_s: must be > 0");
    if (!(a.t_end >= a.t_start)) problems.emplace_back("analytic.t_end_s: must be >= t_start_s");
    if (!(a.truncation_tol > 0.0 && a.truncation_tol < 1.0))
      problems.emplace_back("analytic.truncation_tol: must lie in (0, 1)");
    if (!(a.aliasing_tol > 0.0)) problems.emplace_back("analytic.aliasing_tol: must be > 0");
    if (a.n_cap < 1) problems.emplace_back("analytic.n_cap: must be >= 1");
    if (a.omega_max > 0.0 && a.n_samples >= 2 && a.t_end >= 2.0 * kPi * a.n_samples / a.omega_max)
      problems.emplace_back("analytic.t_end_s: must be below the period 2 pi n_samples / omega_max");
  }
  if (c.pbs && problems.empty()) {
    guard([&] { c.sim_config(c.medium()).validate(); });
  }
  if (c.sweep) {
    const auto& s = *c.sweep;
    if (s.n_cells_min < 0) problems.emplace_back("sweep.n_cells_min: must be >= 0");
    if (s.n_cells_max < s.n_cells_min)
      problems.emplace_back("sweep.n_cells_max: must be >= n_cells_min");
    if (s.n_cells_step <= 0) problems.emplace_back("sweep.n_cells_step: must be > 0");
    SpheroidGeometry g = c.geom;
    g.n_cells = s.n_cells_max;
    if (!(g.cell_matrix_volume() < g.volume()))
      problems.emplace_back(
          "sweep.n_cells_max: porosity constraint violated (n_cells * cell_volume must be below "
          "the spheroid volume)");
  }
  if (!problems.empty()) throw ConfigError(std::move(problems));
}

}  // namespace spheroid
