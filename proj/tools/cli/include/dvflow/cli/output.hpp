#pragma once

// File emission: CSV tables, snapshot profiles and static SVG line plots.

#include <filesystem>
#include <string>
#include <vector>

#include "dvflow/types.hpp"

namespace dvflow::cli {

/// Time-series header, in file order (starts with "t").
const std::vector<std::string>& timeseries_columns();

/// Value of one named time-series column; empty string for an absent bound.
std::string timeseries_cell(const DiagnosticsRecord& r, const std::string& column);
double timeseries_value(const DiagnosticsRecord& r, const std::string& column);

std::string timeseries_csv(const std::vector<DiagnosticsRecord>& records);

/// Columns x, rho, u, w, X.
std::string snapshot_csv(const FluidState& state, const ConstitutiveLaw& law,
                         const Grid& grid);

/// Quotes a CSV field when it contains a comma, quote or newline.
std::string csv_field(const std::string& text);

struct PlotSeries {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Self-contained SVG line chart.
std::string svg_line_plot(const PlotSeries& series);

/// Writes `content` verbatim; throws std::runtime_error naming the path.
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace dvflow::cli
