#pragma once

#include "ncdoa/experiments.hpp"

#include <filesystem>
#include <span>
#include <string>

namespace ncdoa {

inline constexpr std::string_view kCsvHeader =
    "method,sweep_param,sweep_value,mse_deg2,mean_runtime_s,num_failures,num_runs,seed";

/// CSV text with the fixed header row. Doubles use the shortest round-trip form.
std::string format_csv(std::span<const ExperimentResult> results);

/// Throws std::runtime_error naming the path when the file cannot be written.
void write_csv(std::span<const ExperimentResult> results, const std::filesystem::path& path);

/// SVG line chart of MSE (log axis) against the sweep value, one series per method.
std::string format_plot(std::span<const ExperimentResult> results);
void render_plot(std::span<const ExperimentResult> results, const std::filesystem::path& path);

/// Shortest decimal that parses back to `v`.
std::string format_double(double v);

} // namespace ncdoa
