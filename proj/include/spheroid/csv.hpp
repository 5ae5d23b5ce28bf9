#pragma once

/// @file csv.hpp
/// @brief Plot-ready CSV export. Every file starts with '#' comment lines
/// (tool version, config hash, seed) followed by a column-name row.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spheroid/timeseries.hpp"

namespace spheroid::csv {

struct Header {
  std::string config_hash;
  std::optional<std::uint64_t> seed;
  std::string description;
};

/// Columns t_s,value,unit,provenance,probe_id; numbers printed with %.17g.
std::string format_series(const TimeSeries& series, std::string_view probe_id, const Header& header);

std::string format_table(const std::vector<std::string>& columns,
                         const std::vector<std::vector<std::string>>& rows, const Header& header);

/// Writes `content` to `path` (creating parent directories).
void write_file(const std::filesystem::path& path, std::string_view content);

/// File-name-safe version of a probe id.
std::string file_stem(std::string_view id);

std::string number(double v);

}  // namespace spheroid::csv
