#pragma once

// Far-field narrowband ULA snapshot simulation and the analytic harmonic
// expansion of the magnitude-squared array output.
//
// Angle convention: the spatial phase per element is 2*pi*(d/lambda)*cos(theta),
// so theta = 0 deg is endfire. Angles are degrees at the interface.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace ncdoa {

using Complex = std::complex<double>;

struct ArrayGeometry {
    std::size_t num_elements = 0;
    double spacing_ratio = 0.5; ///< d / lambda

    /// Throws std::invalid_argument unless num_elements >= 2 and spacing_ratio > 0.
    void validate() const;
};

struct Target {
    double angle_deg = 0.0;
    double amplitude = 1.0;
};

/// Ordered targets with one designated reference. A non-empty scene always
/// has its reference at the maximal amplitude.
class TargetScene {
public:
    TargetScene() = default;
    TargetScene(std::vector<Target> targets, std::size_t reference_index);

    const std::vector<Target>& targets() const noexcept { return targets_; }
    std::size_t reference_index() const noexcept { return reference_index_; }
    const Target& reference() const { return targets_.at(reference_index_); }
    std::size_t size() const noexcept { return targets_.size(); }
    bool empty() const noexcept { return targets_.empty(); }

    /// Angles of all targets except the reference, in scene order.
    std::vector<double> unknown_angles() const;

    /// Returns a copy with every amplitude multiplied by `factor` (> 0).
    TargetScene scaled(double factor) const;

private:
    std::vector<Target> targets_;
    std::size_t reference_index_ = 0;
};

enum class PhaseErrorKind {
    none,
    per_target_uniform, ///< gamma_{n,i} ~ U[0, max] drawn per element and target
    per_element_common, ///< gamma_n ~ U[0, max] applied to the whole element output
};

struct PhaseErrorModel {
    PhaseErrorKind kind = PhaseErrorKind::none;
    double max_error_deg = 0.0;
};

struct NoiseModel {
    double variance = 0.0; ///< circular complex Gaussian, E|v|^2
};

struct Snapshot {
    std::vector<Complex> samples;
};

using SnapshotSet = std::vector<Snapshot>;

struct MagnitudeSequence {
    std::vector<double> values;

    std::size_t size() const noexcept { return values.size(); }
};

struct HarmonicComponent {
    double normalized_frequency = 0.0; ///< cycles per element
    double amplitude = 0.0;
    std::pair<std::size_t, std::size_t> target_pair{};
};

/// y_n = sum_i |x_i| exp(j(2 pi n (d/lambda) cos(theta_i) + gamma_{n,i})) + v_n.
///
/// With PhaseErrorKind::per_element_common the element phase error rotates the
/// complete element output (targets and receiver noise alike), which leaves
/// |y_n|^2 unchanged.
Snapshot simulate_snapshot(const ArrayGeometry& geometry, const TargetScene& scene,
                           const NoiseModel& noise, const PhaseErrorModel& phase_err,
                           std::uint64_t rng_seed);

/// Snapshot 0 uses `rng_seed` directly, so a one-snapshot set equals
/// simulate_snapshot() for the same seed.
SnapshotSet simulate_snapshot_set(const ArrayGeometry& geometry, const TargetScene& scene,
                                  const NoiseModel& noise, const PhaseErrorModel& phase_err,
                                  std::size_t num_snapshots, std::uint64_t rng_seed);

MagnitudeSequence magnitude_squared(const Snapshot& s);

/// DC term plus one component per unordered target pair (zero phase error).
std::vector<HarmonicComponent> expand_harmonics(const ArrayGeometry& geometry,
                                                const TargetScene& scene);

/// Synthesises DC + sum amp*cos(2 pi f n).
double evaluate_harmonics(const std::vector<HarmonicComponent>& components, double n);

/// -10 log10(variance). Throws for variance <= 0.
double snr_from_noise_var(double variance);

/// Inverse of snr_from_noise_var.
double noise_var_from_snr(double snr_db);

struct SceneSamplerParams {
    std::size_t num_unknown = 2;
    double angle_min_deg = 10.0;
    double angle_max_deg = 90.0;
    double min_separation_deg = 5.0;
    double ref_amplitude = 100.0;
    double unknown_amplitude = 1.0;
};

/// Reference target at 0 deg (index 0) followed by `num_unknown` targets drawn
/// uniformly with pairwise separation enforced by rejection sampling.
/// Throws std::runtime_error when the separation cannot be met.
TargetScene sample_scene(std::uint64_t rng_seed, const SceneSamplerParams& params);

} // namespace ncdoa
