#include "ncdoa/experiments.hpp"

#include "ncdoa/assignment.hpp"
#include "ncdoa/rng.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace ncdoa {

namespace {

constexpr std::array kMethods{
    std::pair{Method::noncoherent, std::string_view{"noncoherent"}},
    std::pair{Method::noncoherent_virtual, std::string_view{"noncoherent_virtual"}},
    std::pair{Method::noncoherent_integrated, std::string_view{"noncoherent_integrated"}},
    std::pair{Method::noncoherent_virtual_integrated,
              std::string_view{"noncoherent_virtual_integrated"}},
    std::pair{Method::coherent_omp, std::string_view{"coherent_omp"}},
};

constexpr std::uint64_t kSceneStream = 10;
constexpr std::uint64_t kSnapshotStream = 11;

bool uses_integration(Method m)
{
    return m == Method::noncoherent_integrated || m == Method::noncoherent_virtual_integrated;
}

bool uses_virtual_array(Method m)
{
    return m == Method::noncoherent_virtual || m == Method::noncoherent_virtual_integrated;
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

} // namespace

std::string_view to_string(Method m) noexcept
{
    for (const auto& [method, name] : kMethods) {
        if (method == m) return name;
    }
    return "unknown";
}

Method parse_method(std::string_view name)
{
    name = trim(name);
    for (const auto& [method, n] : kMethods) {
        if (n == name) return method;
    }
    throw std::invalid_argument("unknown method '" + std::string(name) + "'");
}

std::vector<Method> parse_methods(std::string_view list)
{
    std::vector<Method> out;
    while (!list.empty()) {
        const auto comma = list.find(',');
        const auto item = trim(list.substr(0, comma));
        if (!item.empty()) out.push_back(parse_method(item));
        if (comma == std::string_view::npos) break;
        list.remove_prefix(comma + 1);
    }
    if (out.empty()) throw std::invalid_argument("empty method list");
    return out;
}

std::vector<Method> all_methods()
{
    std::vector<Method> out;
    for (const auto& entry : kMethods) out.push_back(entry.first);
    return out;
}

void ExperimentConfig::validate() const
{
    if (num_runs < 1) throw std::invalid_argument("ExperimentConfig: num_runs must be >= 1");
    if (num_snapshots < 1) {
        throw std::invalid_argument("ExperimentConfig: num_snapshots must be >= 1");
    }
    if (methods.empty()) throw std::invalid_argument("ExperimentConfig: no methods selected");
    geometry.validate();
    if (scene.num_unknown < 1) {
        throw std::invalid_argument("ExperimentConfig: need at least one unknown target");
    }
    if (!(noise.variance >= 0.0)) {
        throw std::invalid_argument("ExperimentConfig: noise variance must be >= 0");
    }
    if (virtual_array.upsample_factor < 1) {
        throw std::invalid_argument("ExperimentConfig: upsample_factor must be >= 1");
    }
    if (num_bins < 2) throw std::invalid_argument("ExperimentConfig: num_bins must be >= 2");
}

void MseAccumulator::add_run(std::span<const double> truth, std::span<const double> estimates)
{
    if (truth.size() != estimates.size()) {
        throw std::invalid_argument("mse: truth and estimate lists differ in length");
    }
    total_ += assigned_squared_error(truth, estimates);
    ++runs_;
}

void MseAccumulator::add_failure(std::span<const double> truth)
{
    for (double t : truth) total_ += (90.0 - t) * (90.0 - t);
    ++runs_;
    ++failures_;
}

double MseAccumulator::value() const
{
    return runs_ == 0 ? 0.0 : total_ / static_cast<double>(runs_);
}

double mse(std::span<const std::vector<double>> truth,
           std::span<const std::vector<double>> estimates)
{
    if (truth.size() != estimates.size()) {
        throw std::invalid_argument("mse: run counts differ");
    }
    MseAccumulator acc;
    for (std::size_t r = 0; r < truth.size(); ++r) acc.add_run(truth[r], estimates[r]);
    return acc.value();
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t index)
{
    return derive_seed(master_seed, index);
}

TrialOutcome run_trial(const ExperimentConfig& cfg, Method method, std::uint64_t seed,
                       const SteeringDictionary* dict)
{
    const TargetScene scene = sample_scene(derive_seed(seed, kSceneStream), cfg.scene);
    const std::size_t n_snap = method == Method::noncoherent || method == Method::noncoherent_virtual
                                   ? 1
                                   : cfg.num_snapshots;
    const SnapshotSet snaps = simulate_snapshot_set(cfg.geometry, scene, cfg.noise,
                                                    cfg.phase_error, n_snap,
                                                    derive_seed(seed, kSnapshotStream));

    TrialOutcome out;
    out.true_angles = scene.unknown_angles();
    out.dominance_ok = scene.size() < 2 || check_reference_dominance(scene);

    if (method == Method::coherent_omp) {
        std::optional<SteeringDictionary> local;
        if (dict == nullptr) {
            local = build_dictionary(cfg.geometry, cfg.num_bins);
            dict = &*local;
        }
        const auto start = Clock::now();
        const OmpResult omp = omp_estimate(snaps, *dict, scene.size());
        out.runtime_s = seconds_since(start);
        for (const auto& [truth, est] : baseline_mse_angles(omp, scene)) {
            out.estimated_angles.push_back(est);
        }
        return out;
    }

    EstimatorConfig est_cfg = cfg.estimator;
    est_cfg.num_unknown_targets = cfg.scene.num_unknown;
    const std::size_t factor = uses_virtual_array(method) ? cfg.virtual_array.upsample_factor : 1;
    // Upsampling by `factor` divides the effective element spacing.
    const double spacing = cfg.geometry.spacing_ratio / static_cast<double>(factor);

    const auto start = Clock::now();
    std::vector<MagnitudeSequence> mags;
    mags.reserve(snaps.size());
    for (const auto& s : snaps) mags.push_back(magnitude_squared(s));
    MagnitudeSequence a = uses_integration(method) ? integrate_snapshots(mags) : mags.front();
    if (factor > 1) a = sinc_interpolate(a, cfg.virtual_array);
    try {
        out.estimated_angles = estimate_doas(a, est_cfg, spacing).angles_deg;
    } catch (const InsufficientPeaksError&) {
        out.failed = true;
    }
    out.runtime_s = seconds_since(start);
    return out;
}

ExperimentResult run_point(const ExperimentConfig& cfg, Method method,
                           std::string_view sweep_param, double sweep_value)
{
    cfg.validate();
    std::optional<SteeringDictionary> dict;
    if (method == Method::coherent_omp) dict = build_dictionary(cfg.geometry, cfg.num_bins);

    MseAccumulator acc;
    double runtime = 0.0;
    std::size_t violations = 0;
    for (std::size_t r = 0; r < cfg.num_runs; ++r) {
        const auto outcome =
            run_trial(cfg, method, trial_seed(cfg.seed, r), dict ? &*dict : nullptr);
        runtime += outcome.runtime_s;
        if (!outcome.dominance_ok) ++violations;
        if (outcome.failed) {
            acc.add_failure(outcome.true_angles);
        } else {
            acc.add_run(outcome.true_angles, outcome.estimated_angles);
        }
    }

    ExperimentResult res;
    res.method = method;
    res.sweep_param = std::string(sweep_param);
    res.sweep_value = sweep_value;
    res.mse_deg2 = acc.value();
    res.mean_runtime_s = runtime / static_cast<double>(cfg.num_runs);
    res.num_failures = acc.failures();
    res.num_runs = cfg.num_runs;
    res.seed = cfg.seed;
    res.dominance_violations = violations;
    return res;
}

std::vector<ExperimentResult> sweep_elements(const ExperimentConfig& cfg,
                                             std::span<const double> element_counts)
{
    std::vector<ExperimentResult> out;
    for (Method m : cfg.methods) {
        for (double count : element_counts) {
            if (!(count >= 2.0) || count != std::floor(count)) {
                throw std::invalid_argument("sweep_elements: element counts must be integers >= 2");
            }
            ExperimentConfig point = cfg;
            point.geometry.num_elements = static_cast<std::size_t>(count);
            out.push_back(run_point(point, m, "num_elements", count));
        }
    }
    sort_results(out);
    return out;
}

std::vector<ExperimentResult> sweep_snr(const ExperimentConfig& cfg, std::span<const double> snr_db)
{
    std::vector<ExperimentResult> out;
    for (Method m : cfg.methods) {
        for (double snr : snr_db) {
            ExperimentConfig point = cfg;
            point.noise.variance = noise_var_from_snr(snr);
            out.push_back(run_point(point, m, "snr_db", snr));
        }
    }
    sort_results(out);
    return out;
}

std::vector<ExperimentResult> sweep_phase_error(const ExperimentConfig& cfg,
                                                std::span<const double> max_error_deg)
{
    std::vector<ExperimentResult> out;
    for (Method m : cfg.methods) {
        for (double err : max_error_deg) {
            if (!(err >= 0.0)) throw std::invalid_argument("sweep_phase_error: negative error");
            ExperimentConfig point = cfg;
            point.phase_error.max_error_deg = err;
            if (point.phase_error.kind == PhaseErrorKind::none && err > 0.0) {
                point.phase_error.kind = PhaseErrorKind::per_target_uniform;
            }
            out.push_back(run_point(point, m, "phase_error_deg", err));
        }
    }
    sort_results(out);
    return out;
}

std::vector<ExperimentResult> bench_runtime(const ExperimentConfig& cfg,
                                            std::span<const double> element_counts)
{
    return sweep_elements(cfg, element_counts);
}

void sort_results(std::vector<ExperimentResult>& results)
{
    std::stable_sort(results.begin(), results.end(),
                     [](const ExperimentResult& a, const ExperimentResult& b) {
                         if (a.method != b.method) return a.method < b.method;
                         return a.sweep_value < b.sweep_value;
                     });
}

} // namespace ncdoa
