#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace cbf {

/// Shortest decimal that reads back to the same double ("nan", "inf", "-inf" otherwise).
std::string format_real(double x);

/// Minimal CSV table; cells are written verbatim, so callers format numbers.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string str() const;
};

/// JSON dump with numbers in shortest round-trip form and a trailing newline.
std::string dump_json(const nlohmann::json& j);

void write_text(const std::filesystem::path& path, const std::string& content);
std::string read_text(const std::filesystem::path& path);

/// SHA-256 of a file, lowercase hex.
std::string sha256_file(const std::filesystem::path& path);

struct SvgSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool line = false;  ///< polyline instead of markers
};

/// Scatter/line chart; log axes take log10 of positive data and drop the rest.
std::string svg_plot(const std::string& title, const std::string& x_label, const std::string& y_label,
                     const std::vector<SvgSeries>& series, bool log_x, bool log_y);

}  // namespace cbf
