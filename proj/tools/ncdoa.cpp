// Command-line front end: snapshot simulation, single-sequence estimation and
// the Monte Carlo sweeps.

#include "ncdoa/array_enhancement.hpp"
#include "ncdoa/config.hpp"
#include "ncdoa/experiments.hpp"
#include "ncdoa/report.hpp"
#include "ncdoa/signal_model.hpp"
#include "ncdoa/spectral_doa.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace ncdoa;

namespace {

struct CommonOptions {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string plot;
    std::string methods;
    std::optional<std::size_t> runs;
    std::string values;
};

void add_common(CLI::App* cmd, CommonOptions& opt)
{
    cmd->add_option("--config", opt.config, "INI configuration file")->check(CLI::ExistingFile);
    cmd->add_option("--seed", opt.seed, "Master RNG seed");
    cmd->add_option("--out", opt.out, "Output CSV path (stdout when omitted)");
    cmd->add_option("--plot", opt.plot, "Optional SVG plot path");
    cmd->add_option("--methods", opt.methods, "Comma-separated method list");
}

std::optional<fs::path> config_path(const CommonOptions& opt)
{
    if (opt.config.empty()) return std::nullopt;
    return fs::path(opt.config);
}

void emit(const std::string& text, const std::string& out)
{
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open '" + out + "' for writing");
    f << text;
    if (!f) throw std::runtime_error("failed writing '" + out + "'");
}

/// "angle:amplitude,angle:amplitude,..."; the first entry is the reference.
TargetScene parse_targets(const std::string& text)
{
    std::vector<Target> targets;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) {
            throw std::invalid_argument("target '" + item + "' is not angle:amplitude");
        }
        targets.push_back({std::stod(item.substr(0, colon)), std::stod(item.substr(colon + 1))});
    }
    return TargetScene(std::move(targets), 0);
}

bool parse_double(std::string_view text, double& v)
{
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\r' || text.back() == '\t')) {
        text.remove_suffix(1);
    }
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    return ec == std::errc{} && ptr == text.data() + text.size();
}

std::vector<std::string> split_csv_line(const std::string& line)
{
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    return fields;
}

/// Reads one column of a CSV: `magnitude_sq` when a header names it,
/// otherwise the last column.
MagnitudeSequence read_magnitudes(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");

    MagnitudeSequence seq;
    std::optional<std::size_t> column;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        const auto fields = split_csv_line(line);
        if (fields.empty()) continue;
        double probe = 0.0;
        if (seq.values.empty() && !column && !parse_double(fields.back(), probe)) {
            for (std::size_t i = 0; i < fields.size(); ++i) {
                if (fields[i] == "magnitude_sq") column = i;
            }
            if (!column) column = fields.size() - 1;
            continue;
        }
        const std::size_t c = column.value_or(fields.size() - 1);
        double v = 0.0;
        if (c >= fields.size() || !parse_double(fields[c], v)) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": not a number");
        }
        seq.values.push_back(v);
    }
    return seq;
}

int run_simulate(const CommonOptions& opt, std::size_t elements, double noise_var,
                 const std::string& targets)
{
    ExperimentConfig cfg = load_general_config(config_path(opt));
    if (opt.seed) cfg.seed = *opt.seed;
    if (elements > 0) cfg.geometry.num_elements = elements;
    if (noise_var >= 0.0) cfg.noise.variance = noise_var;

    const TargetScene scene =
        targets.empty() ? sample_scene(cfg.seed, cfg.scene) : parse_targets(targets);
    const Snapshot snap =
        simulate_snapshot(cfg.geometry, scene, cfg.noise, cfg.phase_error, cfg.seed);
    const MagnitudeSequence mag = magnitude_squared(snap);

    std::string text = "n,re,im,magnitude_sq\n";
    for (std::size_t n = 0; n < snap.samples.size(); ++n) {
        text += std::to_string(n) + ',' + format_double(snap.samples[n].real()) + ',' +
                format_double(snap.samples[n].imag()) + ',' + format_double(mag.values[n]) + '\n';
    }
    emit(text, opt.out);

    auto& log = opt.out.empty() ? std::cerr : std::cout;
    for (std::size_t i = 0; i < scene.size(); ++i) {
        const auto& t = scene.targets()[i];
        log << (i == scene.reference_index() ? "reference" : "target") << " angle_deg="
            << format_double(t.angle_deg) << " amplitude=" << format_double(t.amplitude) << '\n';
    }
    return 0;
}

int run_estimate(const CommonOptions& opt, const std::string& input, EstimatorConfig est,
                 double spacing_ratio, std::size_t upsample)
{
    MagnitudeSequence a = read_magnitudes(input);
    double spacing = spacing_ratio;
    if (upsample > 1) {
        a = sinc_interpolate(a, VirtualArrayConfig{upsample, std::nullopt});
        spacing /= static_cast<double>(upsample);
    }
    const DoaEstimate doa = estimate_doas(a, est, spacing);
    std::string text = "angle_deg,normalized_frequency\n";
    for (std::size_t i = 0; i < doa.angles_deg.size(); ++i) {
        text += format_double(doa.angles_deg[i]) + ',' +
                format_double(doa.peak_frequencies[i] * static_cast<double>(std::max<std::size_t>(upsample, 1))) + '\n';
    }
    emit(text, opt.out);
    return 0;
}

int run_sweep(const std::string& command, const CommonOptions& opt)
{
    const SweepKind kind = parse_sweep_kind(command);
    SweepPlan plan = load_plan(kind, config_path(opt));
    if (opt.seed) plan.config.seed = *opt.seed;
    if (!opt.methods.empty()) plan.config.methods = parse_methods(opt.methods);
    if (opt.runs) plan.config.num_runs = *opt.runs;
    if (!opt.values.empty()) plan.values = parse_number_list(opt.values);

    std::vector<ExperimentResult> results;
    switch (kind) {
    case SweepKind::elements: results = sweep_elements(plan.config, plan.values); break;
    case SweepKind::snr: results = sweep_snr(plan.config, plan.values); break;
    case SweepKind::phase_error: results = sweep_phase_error(plan.config, plan.values); break;
    case SweepKind::bench: results = bench_runtime(plan.config, plan.values); break;
    }

    std::size_t violations = 0;
    for (const auto& r : results) violations += r.dominance_violations;
    if (violations > 0) {
        std::cerr << "warning: reference dominance violated in " << violations << " trials\n";
    }

    emit(format_csv(results), opt.out);
    if (!opt.plot.empty()) render_plot(results, opt.plot);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Non-coherent direction-of-arrival estimation from magnitude-only array data"};
    app.require_subcommand(1);

    CommonOptions sim_opt;
    std::size_t sim_elements = 0;
    double sim_noise = -1.0;
    std::string sim_targets;
    auto* sim = app.add_subcommand("simulate", "Simulate one snapshot and its magnitude sequence");
    add_common(sim, sim_opt);
    sim->add_option("--elements", sim_elements, "Number of array elements");
    sim->add_option("--noise-var", sim_noise, "Complex noise variance");
    sim->add_option("--targets", sim_targets,
                    "angle:amplitude list, reference first (default: sampled scene)");

    CommonOptions est_opt;
    std::string est_input;
    EstimatorConfig est_cfg;
    double est_spacing = 0.5;
    std::size_t est_upsample = 1;
    bool est_no_refine = false;
    auto* est = app.add_subcommand("estimate", "Estimate DOAs from a magnitude sequence CSV");
    add_common(est, est_opt);
    est->add_option("--input", est_input, "CSV with a magnitude_sq column (or one value per line)")
        ->required()
        ->check(CLI::ExistingFile);
    est->add_option("--num-unknown", est_cfg.num_unknown_targets, "Number of unknown targets");
    est->add_option("--spacing-ratio", est_spacing, "Element spacing d/lambda");
    est->add_option("--zero-pad", est_cfg.zero_pad_factor, "Zero-padding factor");
    est->add_option("--ref-angle", est_cfg.ref_angle_deg, "Reference target angle (deg)");
    est->add_option("--upsample", est_upsample, "Virtual-array upsampling factor");
    est->add_flag("--no-refine", est_no_refine, "Disable sub-bin peak refinement");

    CommonOptions sweep_opt;
    std::vector<CLI::App*> sweeps;
    for (const char* name : {"sweep-elements", "sweep-snr", "sweep-phase-error", "bench"}) {
        auto* cmd = app.add_subcommand(name, std::string("Monte Carlo sweep: ") + name);
        add_common(cmd, sweep_opt);
        cmd->add_option("--runs", sweep_opt.runs, "Monte Carlo runs per point");
        cmd->add_option("--values", sweep_opt.values, "Comma-separated sweep values");
        sweeps.push_back(cmd);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (sim->parsed()) return run_simulate(sim_opt, sim_elements, sim_noise, sim_targets);
        if (est->parsed()) {
            est_cfg.refine = !est_no_refine;
            return run_estimate(est_opt, est_input, est_cfg, est_spacing, est_upsample);
        }
        for (auto* cmd : sweeps) {
            if (cmd->parsed()) return run_sweep(cmd->get_name(), sweep_opt);
        }
    } catch (const std::exception& e) {
        std::cerr << "ncdoa: error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
