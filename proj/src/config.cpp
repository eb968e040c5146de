#include "ncdoa/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>

namespace ncdoa {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

double to_double(std::string_view text)
{
    text = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::invalid_argument("not a number: '" + std::string(text) + "'");
    }
    return v;
}

template <typename T>
T to_unsigned(std::string_view text)
{
    text = trim(text);
    T v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::invalid_argument("not a non-negative integer: '" + std::string(text) + "'");
    }
    return v;
}

bool to_bool(std::string_view text)
{
    text = trim(text);
    if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
    if (text == "false" || text == "0" || text == "no" || text == "off") return false;
    throw std::invalid_argument("not a boolean: '" + std::string(text) + "'");
}

using Setter = std::function<void(SweepPlan&, std::string_view)>;

const std::map<std::string, Setter, std::less<>>& setters()
{
    static const std::map<std::string, Setter, std::less<>> table{
        {"runs", [](SweepPlan& p, std::string_view v) { p.config.num_runs = to_unsigned<std::size_t>(v); }},
        {"snapshots", [](SweepPlan& p, std::string_view v) { p.config.num_snapshots = to_unsigned<std::size_t>(v); }},
        {"num_elements", [](SweepPlan& p, std::string_view v) { p.config.geometry.num_elements = to_unsigned<std::size_t>(v); }},
        {"spacing_ratio", [](SweepPlan& p, std::string_view v) { p.config.geometry.spacing_ratio = to_double(v); }},
        {"num_unknown", [](SweepPlan& p, std::string_view v) { p.config.scene.num_unknown = to_unsigned<std::size_t>(v); }},
        {"angle_min_deg", [](SweepPlan& p, std::string_view v) { p.config.scene.angle_min_deg = to_double(v); }},
        {"angle_max_deg", [](SweepPlan& p, std::string_view v) { p.config.scene.angle_max_deg = to_double(v); }},
        {"min_separation_deg", [](SweepPlan& p, std::string_view v) { p.config.scene.min_separation_deg = to_double(v); }},
        {"ref_amplitude", [](SweepPlan& p, std::string_view v) { p.config.scene.ref_amplitude = to_double(v); }},
        {"unknown_amplitude", [](SweepPlan& p, std::string_view v) { p.config.scene.unknown_amplitude = to_double(v); }},
        {"noise_variance", [](SweepPlan& p, std::string_view v) { p.config.noise.variance = to_double(v); }},
        {"snr_db", [](SweepPlan& p, std::string_view v) { p.config.noise.variance = noise_var_from_snr(to_double(v)); }},
        {"phase_error_kind", [](SweepPlan& p, std::string_view v) { p.config.phase_error.kind = parse_phase_error_kind(v); }},
        {"phase_error_deg", [](SweepPlan& p, std::string_view v) { p.config.phase_error.max_error_deg = to_double(v); }},
        {"zero_pad_factor", [](SweepPlan& p, std::string_view v) { p.config.estimator.zero_pad_factor = to_unsigned<std::size_t>(v); }},
        {"dc_guard_bins", [](SweepPlan& p, std::string_view v) { p.config.estimator.dc_guard_bins = to_unsigned<std::size_t>(v); }},
        {"refine", [](SweepPlan& p, std::string_view v) { p.config.estimator.refine = to_bool(v); }},
        {"ref_angle_deg", [](SweepPlan& p, std::string_view v) { p.config.estimator.ref_angle_deg = to_double(v); }},
        {"min_relative_peak", [](SweepPlan& p, std::string_view v) { p.config.estimator.min_relative_peak = to_double(v); }},
        {"upsample_factor", [](SweepPlan& p, std::string_view v) { p.config.virtual_array.upsample_factor = to_unsigned<std::size_t>(v); }},
        {"interpolation_halfwidth", [](SweepPlan& p, std::string_view v) { p.config.virtual_array.interpolation_halfwidth = to_unsigned<std::size_t>(v); }},
        {"num_bins", [](SweepPlan& p, std::string_view v) { p.config.num_bins = to_unsigned<std::size_t>(v); }},
        {"seed", [](SweepPlan& p, std::string_view v) { p.config.seed = to_unsigned<std::uint64_t>(v); }},
        {"methods", [](SweepPlan& p, std::string_view v) { p.config.methods = parse_methods(v); }},
        {"values", [](SweepPlan& p, std::string_view v) { p.values = parse_number_list(v); }},
    };
    return table;
}

void apply_section(SweepPlan& plan, const boost::property_tree::ptree& section,
                   const std::string& where)
{
    for (const auto& [key, node] : section) {
        const auto it = setters().find(key);
        if (it == setters().end()) {
            throw std::runtime_error(where + ": unknown key '" + key + "'");
        }
        try {
            it->second(plan, node.get_value<std::string>());
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error(where + ": key '" + key + "': " + e.what());
        }
    }
}

} // namespace

SweepKind parse_sweep_kind(std::string_view command)
{
    if (command == "sweep-elements") return SweepKind::elements;
    if (command == "sweep-snr") return SweepKind::snr;
    if (command == "sweep-phase-error") return SweepKind::phase_error;
    if (command == "bench") return SweepKind::bench;
    throw std::invalid_argument("unknown sweep command '" + std::string(command) + "'");
}

std::string_view section_name(SweepKind kind) noexcept
{
    switch (kind) {
    case SweepKind::elements: return "sweep-elements";
    case SweepKind::snr: return "sweep-snr";
    case SweepKind::phase_error: return "sweep-phase-error";
    case SweepKind::bench: return "bench";
    }
    return "";
}

SweepPlan default_plan(SweepKind kind)
{
    SweepPlan plan;
    plan.kind = kind;
    switch (kind) {
    case SweepKind::elements:
        plan.values = {50, 100, 200, 400};
        break;
    case SweepKind::snr:
        plan.values = {0, 5, 10, 20};
        break;
    case SweepKind::phase_error:
        plan.values = {0, 25, 45, 90};
        break;
    case SweepKind::bench:
        plan.values = {50, 100, 200, 400};
        plan.config.methods = all_methods();
        break;
    }
    return plan;
}

static boost::property_tree::ptree read_config_file(const std::filesystem::path& file)
{
    boost::property_tree::ptree tree;
    try {
        boost::property_tree::read_ini(file.string(), tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw std::runtime_error("config '" + file.string() + "': " + e.what());
    }
    for (const auto& [section, node] : tree) {
        if (node.empty() && !node.data().empty()) {
            throw std::runtime_error("config '" + file.string() + "': key '" + section +
                                     "' outside of a section");
        }
    }
    return tree;
}

SweepPlan load_plan(SweepKind kind, const std::optional<std::filesystem::path>& file)
{
    SweepPlan plan = default_plan(kind);
    if (!file) return plan;

    const auto tree = read_config_file(*file);
    const std::string name = file->string();
    if (const auto general = tree.get_child_optional("general")) {
        apply_section(plan, *general, "config '" + name + "' [general]");
    }
    const std::string own(section_name(kind));
    if (const auto specific = tree.get_child_optional(own)) {
        apply_section(plan, *specific, "config '" + name + "' [" + own + "]");
    }
    return plan;
}

ExperimentConfig load_general_config(const std::optional<std::filesystem::path>& file)
{
    SweepPlan plan = default_plan(SweepKind::elements);
    if (file) {
        const auto tree = read_config_file(*file);
        if (const auto general = tree.get_child_optional("general")) {
            apply_section(plan, *general, "config '" + file->string() + "' [general]");
        }
    }
    return plan.config;
}

std::vector<double> parse_number_list(std::string_view text)
{
    std::vector<double> out;
    while (!trim(text).empty()) {
        const auto comma = text.find(',');
        out.push_back(to_double(text.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

PhaseErrorKind parse_phase_error_kind(std::string_view name)
{
    name = trim(name);
    if (name == "none") return PhaseErrorKind::none;
    if (name == "per_target_uniform") return PhaseErrorKind::per_target_uniform;
    if (name == "per_element_common") return PhaseErrorKind::per_element_common;
    throw std::invalid_argument("unknown phase error kind '" + std::string(name) + "'");
}

} // namespace ncdoa
