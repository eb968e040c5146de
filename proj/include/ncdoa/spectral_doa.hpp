#pragma once

// Non-coherent DOA estimation by harmonic analysis of |y_n|^2.
//
// Each reference/unknown target pair contributes a tone at
// f = (d/lambda)|cos(theta_ref) - cos(theta_i)| cycles per element. With a
// reference much stronger than the unknowns those tones are the largest
// non-DC peaks of the spectrum, and each one maps back to a single angle in
// [0, 90] deg.

#include "ncdoa/signal_model.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace ncdoa {

/// Magnitudes over normalised frequencies k / padded_length.
struct Spectrum {
    /// |DFT| of the mean-removed, zero-padded sequence (the peak-search array).
    std::vector<double> bin_magnitudes;
    std::size_t padded_length = 0;
    std::size_t original_length = 0;
    std::size_t zero_pad_factor = 1;
    /// |sum a_n|, i.e. bin 0 of the transform before mean removal.
    double raw_dc_magnitude = 0.0;
    /// Magnitudes at or below this level are round-off, not signal.
    double numerical_floor = 0.0;

    double bin_frequency(double bin) const noexcept
    {
        return bin / static_cast<double>(padded_length);
    }
};

struct SpectralPeak {
    double normalized_frequency = 0.0;
    double magnitude = 0.0;
    std::size_t bin_index = 0;
};

struct EstimatorConfig {
    std::size_t num_unknown_targets = 2;
    std::size_t zero_pad_factor = 8;
    /// Padded bins excluded around DC. Defaults to zero_pad_factor (one raw bin).
    std::optional<std::size_t> dc_guard_bins;
    bool refine = true;
    double ref_angle_deg = 0.0;
    /// Peaks below this fraction of the strongest in-band peak are ignored.
    /// 0.25 sits just above the -13.3 dB first sidelobe of the rectangular window.
    double min_relative_peak = 0.25;

    void validate() const;
    std::size_t guard_bins() const { return dc_guard_bins.value_or(zero_pad_factor); }
};

struct DoaEstimate {
    std::vector<double> angles_deg;       ///< ascending, each in [0, 90]
    std::vector<double> peak_frequencies; ///< matching normalised frequencies
};

/// Thrown when the spectrum holds fewer qualifying peaks than requested.
class InsufficientPeaksError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// (d/lambda) |cos(theta_i) - cos(theta_j)|.
double pair_frequency(double theta_i_deg, double theta_j_deg, double spacing_ratio);

/// Zero-pads to zero_pad_factor * next_pow2(N) and transforms the mean-removed
/// sequence. Throws std::invalid_argument for fewer than 2 samples.
Spectrum compute_spectrum(const MagnitudeSequence& a, std::size_t zero_pad_factor);

/// The `count` largest strict local maxima in bins [dc_guard_bins, L/2],
/// pairwise at least zero_pad_factor bins apart, sorted by descending
/// magnitude (ties: lower frequency first).
std::vector<SpectralPeak> find_peaks(const Spectrum& spec, std::size_t count,
                                     std::size_t dc_guard_bins,
                                     double min_relative_peak = 0.25);

/// Parabolic interpolation of log-magnitude around `bin_index`; returns a
/// normalised frequency. Falls back to the bin centre when a neighbour is
/// missing or non-positive, or when the three points are not concave.
double refine_peak(const Spectrum& spec, std::size_t bin_index);

/// arccos(cos(theta_ref) - f / (d/lambda)) in degrees, clamped to [0, 90].
double frequency_to_doa(double f_tilde, double ref_angle_deg, double spacing_ratio);

DoaEstimate estimate_doas(const MagnitudeSequence& a, const EstimatorConfig& cfg,
                          double spacing_ratio);

/// |x_ref| > max_k |x_k|^2 / min_m |x_m| over the non-reference targets.
/// Throws std::invalid_argument for scenes with fewer than two targets.
bool check_reference_dominance(const TargetScene& scene);

} // namespace ncdoa
