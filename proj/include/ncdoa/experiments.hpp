#pragma once

// Monte Carlo harness: per-trial simulation and estimation, MSE accumulation,
// and the element-count / SNR / phase-error / runtime sweeps.

#include "ncdoa/array_enhancement.hpp"
#include "ncdoa/coherent_baseline.hpp"
#include "ncdoa/signal_model.hpp"
#include "ncdoa/spectral_doa.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ncdoa {

enum class Method {
    noncoherent,
    noncoherent_virtual,
    noncoherent_integrated,
    noncoherent_virtual_integrated,
    coherent_omp,
};

std::string_view to_string(Method m) noexcept;
/// Throws std::invalid_argument for an unknown name.
Method parse_method(std::string_view name);
/// Comma-separated list, e.g. "noncoherent,coherent_omp".
std::vector<Method> parse_methods(std::string_view list);
std::vector<Method> all_methods();

struct ExperimentConfig {
    std::vector<Method> methods{Method::noncoherent_virtual_integrated, Method::coherent_omp};
    std::size_t num_runs = 100;
    std::size_t num_snapshots = 5;
    ArrayGeometry geometry{200, 0.5};
    SceneSamplerParams scene;
    NoiseModel noise{0.04};
    PhaseErrorModel phase_error{PhaseErrorKind::per_target_uniform, 0.0};
    EstimatorConfig estimator;
    VirtualArrayConfig virtual_array;
    std::size_t num_bins = 200;
    std::uint64_t seed = 1;

    void validate() const;
};

struct TrialOutcome {
    std::vector<double> true_angles;      ///< non-reference targets
    std::vector<double> estimated_angles; ///< empty when failed
    double runtime_s = 0.0;               ///< estimation only
    bool failed = false;
    bool dominance_ok = true;
};

struct ExperimentResult {
    Method method = Method::noncoherent;
    std::string sweep_param;
    double sweep_value = 0.0;
    double mse_deg2 = 0.0;
    double mean_runtime_s = 0.0;
    std::size_t num_failures = 0;
    std::size_t num_runs = 0;
    std::uint64_t seed = 0;
    std::size_t dominance_violations = 0;
};

/// Accumulates MSE = (1/M) sum_r sum_i (theta_i,r - est_i,r)^2. Each run is
/// summed over targets (not averaged) after optimal truth/estimate matching.
class MseAccumulator {
public:
    /// Throws std::invalid_argument when the lists differ in length.
    void add_run(std::span<const double> truth, std::span<const double> estimates);
    /// Scores every target of a failed run as (90 - theta)^2.
    void add_failure(std::span<const double> truth);

    double value() const;
    std::size_t runs() const noexcept { return runs_; }
    std::size_t failures() const noexcept { return failures_; }

private:
    double total_ = 0.0;
    std::size_t runs_ = 0;
    std::size_t failures_ = 0;
};

/// Convenience: MSE over parallel lists of runs.
double mse(std::span<const std::vector<double>> truth, std::span<const std::vector<double>> estimates);

/// Per-trial seed for run `index` under `master_seed`; identical across sweep
/// points so every point sees the same scenes.
std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t index);

/// One Monte Carlo trial. `dict` may be supplied to avoid rebuilding the
/// steering dictionary for every coherent trial.
TrialOutcome run_trial(const ExperimentConfig& cfg, Method method, std::uint64_t seed,
                       const SteeringDictionary* dict = nullptr);

/// M trials of one method at one configuration.
ExperimentResult run_point(const ExperimentConfig& cfg, Method method,
                           std::string_view sweep_param, double sweep_value);

std::vector<ExperimentResult> sweep_elements(const ExperimentConfig& cfg,
                                             std::span<const double> element_counts);
std::vector<ExperimentResult> sweep_snr(const ExperimentConfig& cfg,
                                        std::span<const double> snr_db);
std::vector<ExperimentResult> sweep_phase_error(const ExperimentConfig& cfg,
                                                std::span<const double> max_error_deg);
std::vector<ExperimentResult> bench_runtime(const ExperimentConfig& cfg,
                                            std::span<const double> element_counts);

/// Method order, then sweep value.
void sort_results(std::vector<ExperimentResult>& results);

} // namespace ncdoa
