#include "spheroid/csv.hpp"

#include <fmt/format.h>

#include <cctype>
#include <fstream>
#include <stdexcept>

namespace spheroid::csv {

namespace {

std::string preamble(const Header& h) {
  std::string s = "# spheroidmc 0.1.0\n";
  if (!h.description.empty()) s += "# " + h.description + "\n";
  s += "# config_sha256: " + (h.config_hash.empty() ? std::string("none") : h.config_hash) + "\n";
  s += "# seed: " + (h.seed ? std::to_string(*h.seed) : std::string("none")) + "\n";
  return s;
}

}  // namespace

std::string number(double v) { return fmt::format("{:.17g}", v); }

std::string format_series(const TimeSeries& series, std::string_view probe_id, const Header& header) {
  std::string s = preamble(header);
  s += "t_s,value,unit,provenance,probe_id\n";
  const auto unit = to_string(series.unit);
  const auto prov = to_string(series.provenance);
  for (std::size_t i = 0; i < series.size(); ++i)
    s += fmt::format("{:.17g},{:.17g},{},{},{}\n", series.time(i), series.values[i], unit, prov,
                     probe_id);
  return s;
}

std::string format_table(const std::vector<std::string>& columns,
                         const std::vector<std::vector<std::string>>& rows, const Header& header) {
  std::string s = preamble(header);
  for (std::size_t i = 0; i < columns.size(); ++i) s += (i ? "," : "") + columns[i];
  s += "\n";
  for (const auto& row : rows) {
    if (row.size() != columns.size()) throw std::invalid_argument("CSV row width mismatch");
    for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + row[i];
    s += "\n";
  }
  return s;
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

std::string file_stem(std::string_view id) {
  std::string s(id);
  for (char& c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.')) c = '_';
  return s;
}

}  // namespace spheroid::csv
