#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "ivm/csv.hpp"

namespace ivm {

/// 800x600 SVG 1.1 line chart: one polyline per y column against x_col.
/// With log_log, non-positive values are skipped and both axes are log10.
std::string render_svg(const CsvTable& table, std::string_view x_col,
                       std::span<const std::string> y_cols, bool log_log,
                       std::string_view title = {});

void write_svg(const CsvTable& table, std::string_view x_col, std::span<const std::string> y_cols,
               const std::filesystem::path& path, bool log_log, std::string_view title = {});

}  // namespace ivm
