#pragma once

// INI-style experiment configuration.
//
//   [general]              keys shared by every command
//   runs = 100
//   snapshots = 5
//   num_elements = 200
//   ...
//   [sweep-snr]            overrides for one command, plus its sweep axis
//   values = 0,5,10,20
//
// Keys left out of the file keep the defaults of the chosen command.

#include "ncdoa/experiments.hpp"

#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

namespace ncdoa {

enum class SweepKind { elements, snr, phase_error, bench };

struct SweepPlan {
    SweepKind kind = SweepKind::elements;
    ExperimentConfig config;
    std::vector<double> values;
};

/// Maps "sweep-elements", "sweep-snr", "sweep-phase-error" and "bench".
/// Throws std::invalid_argument for anything else.
SweepKind parse_sweep_kind(std::string_view command);
std::string_view section_name(SweepKind kind) noexcept;

/// Command defaults: sigma^2 = 0.04, N = 200, T = 5, M = 100, K = 3 with the
/// reference at 0 deg / amplitude 100 and unknowns of amplitude 1 in [10, 90] deg.
SweepPlan default_plan(SweepKind kind);

/// Defaults, then [general], then the command's own section.
/// Throws std::runtime_error naming the file on parse errors or unknown keys.
SweepPlan load_plan(SweepKind kind, const std::optional<std::filesystem::path>& file);

/// Defaults overlaid with the [general] section only.
ExperimentConfig load_general_config(const std::optional<std::filesystem::path>& file);

/// Parses "1,2.5,3" into doubles. Throws std::invalid_argument on bad input.
std::vector<double> parse_number_list(std::string_view text);

PhaseErrorKind parse_phase_error_kind(std::string_view name);

} // namespace ncdoa
