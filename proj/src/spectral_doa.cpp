#include "ncdoa/spectral_doa.hpp"

#include "fft.hpp"
#include "ncdoa/angles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace ncdoa {

void EstimatorConfig::validate() const
{
    if (num_unknown_targets < 1) {
        throw std::invalid_argument("EstimatorConfig: num_unknown_targets must be >= 1");
    }
    if (zero_pad_factor < 1) {
        throw std::invalid_argument("EstimatorConfig: zero_pad_factor must be >= 1");
    }
    if (guard_bins() < 1) {
        throw std::invalid_argument("EstimatorConfig: dc_guard_bins must be >= 1");
    }
    if (!(min_relative_peak >= 0.0 && min_relative_peak < 1.0)) {
        throw std::invalid_argument("EstimatorConfig: min_relative_peak must lie in [0, 1)");
    }
}

double pair_frequency(double theta_i_deg, double theta_j_deg, double spacing_ratio)
{
    return spacing_ratio *
           std::abs(std::cos(deg_to_rad(theta_i_deg)) - std::cos(deg_to_rad(theta_j_deg)));
}

Spectrum compute_spectrum(const MagnitudeSequence& a, std::size_t zero_pad_factor)
{
    const std::size_t n = a.size();
    if (n < 2) throw std::invalid_argument("compute_spectrum: need at least 2 samples");
    if (zero_pad_factor < 1) throw std::invalid_argument("compute_spectrum: zero_pad_factor < 1");

    const double sum = std::accumulate(a.values.begin(), a.values.end(), 0.0);
    const double mean = sum / static_cast<double>(n);
    double l1 = 0.0;
    std::vector<double> centred(n);
    for (std::size_t i = 0; i < n; ++i) {
        centred[i] = a.values[i] - mean;
        l1 += std::abs(a.values[i]);
    }

    Spectrum spec;
    spec.original_length = n;
    spec.zero_pad_factor = zero_pad_factor;
    spec.padded_length = zero_pad_factor * detail::next_pow2(n);
    spec.raw_dc_magnitude = std::abs(sum);
    spec.numerical_floor = 1e-10 * l1;

    const auto bins = detail::forward_dft(centred, spec.padded_length);
    spec.bin_magnitudes.resize(bins.size());
    std::transform(bins.begin(), bins.end(), spec.bin_magnitudes.begin(),
                   [](const std::complex<double>& c) { return std::abs(c); });
    return spec;
}

std::vector<SpectralPeak> find_peaks(const Spectrum& spec, std::size_t count,
                                     std::size_t dc_guard_bins, double min_relative_peak)
{
    if (count < 1) throw std::invalid_argument("find_peaks: count must be >= 1");
    const auto& m = spec.bin_magnitudes;
    const std::size_t len = m.size();
    if (len < 2 || len != spec.padded_length) {
        throw std::invalid_argument("find_peaks: malformed spectrum");
    }

    const std::size_t lo = std::max<std::size_t>(dc_guard_bins, 1);
    const std::size_t hi = len / 2;

    std::vector<std::size_t> candidates;
    for (std::size_t k = lo; k <= hi; ++k) {
        const double left = m[k - 1];
        const double right = m[(k + 1) % len];
        if (m[k] > left && m[k] > right && m[k] > spec.numerical_floor) candidates.push_back(k);
    }

    double strongest = 0.0;
    for (auto k : candidates) strongest = std::max(strongest, m[k]);
    const double threshold = min_relative_peak * strongest;
    std::erase_if(candidates, [&](std::size_t k) { return m[k] < threshold; });

    std::stable_sort(candidates.begin(), candidates.end(), [&](std::size_t x, std::size_t y) {
        if (m[x] != m[y]) return m[x] > m[y];
        return x < y;
    });

    const std::size_t min_sep = std::max<std::size_t>(spec.zero_pad_factor, 1);
    std::vector<SpectralPeak> peaks;
    for (auto k : candidates) {
        const bool clear = std::all_of(peaks.begin(), peaks.end(), [&](const SpectralPeak& p) {
            const std::size_t d = k > p.bin_index ? k - p.bin_index : p.bin_index - k;
            return d >= min_sep;
        });
        if (!clear) continue;
        peaks.push_back({spec.bin_frequency(static_cast<double>(k)), m[k], k});
        if (peaks.size() == count) break;
    }

    if (peaks.size() < count) {
        throw InsufficientPeaksError("find_peaks: requested " + std::to_string(count) +
                                     " peaks, spectrum has " + std::to_string(peaks.size()));
    }
    return peaks;
}

double refine_peak(const Spectrum& spec, std::size_t bin_index)
{
    const auto& m = spec.bin_magnitudes;
    const double centre = spec.bin_frequency(static_cast<double>(bin_index));
    if (bin_index == 0 || bin_index + 1 >= m.size()) return centre;

    const double l = m[bin_index - 1];
    const double c = m[bin_index];
    const double r = m[bin_index + 1];
    if (!(l > 0.0 && c > 0.0 && r > 0.0)) return centre;

    const double a = std::log(l);
    const double b = std::log(c);
    const double g = std::log(r);
    const double denom = a - 2.0 * b + g;
    if (!(denom < 0.0)) return centre;

    const double offset = std::clamp(0.5 * (a - g) / denom, -1.0, 1.0);
    return spec.bin_frequency(static_cast<double>(bin_index) + offset);
}

double frequency_to_doa(double f_tilde, double ref_angle_deg, double spacing_ratio)
{
    const double arg =
        std::clamp(std::cos(deg_to_rad(ref_angle_deg)) - f_tilde / spacing_ratio, -1.0, 1.0);
    return std::clamp(rad_to_deg(std::acos(arg)), 0.0, 90.0);
}

DoaEstimate estimate_doas(const MagnitudeSequence& a, const EstimatorConfig& cfg,
                          double spacing_ratio)
{
    cfg.validate();
    if (!(spacing_ratio > 0.0)) throw std::invalid_argument("estimate_doas: spacing_ratio <= 0");

    const Spectrum spec = compute_spectrum(a, cfg.zero_pad_factor);
    const auto peaks =
        find_peaks(spec, cfg.num_unknown_targets, cfg.guard_bins(), cfg.min_relative_peak);

    std::vector<std::pair<double, double>> found; // (angle, frequency)
    found.reserve(peaks.size());
    for (const auto& p : peaks) {
        const double f = cfg.refine ? refine_peak(spec, p.bin_index) : p.normalized_frequency;
        found.emplace_back(frequency_to_doa(f, cfg.ref_angle_deg, spacing_ratio), f);
    }
    std::sort(found.begin(), found.end());

    DoaEstimate est;
    for (const auto& [angle, f] : found) {
        est.angles_deg.push_back(angle);
        est.peak_frequencies.push_back(f);
    }
    return est;
}

bool check_reference_dominance(const TargetScene& scene)
{
    if (scene.size() < 2) {
        throw std::invalid_argument("check_reference_dominance: need at least two targets");
    }
    double max_amp = 0.0;
    double min_amp = std::numeric_limits<double>::infinity();
    const auto& t = scene.targets();
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i == scene.reference_index()) continue;
        max_amp = std::max(max_amp, t[i].amplitude);
        min_amp = std::min(min_amp, t[i].amplitude);
    }
    return scene.reference().amplitude > max_amp * max_amp / min_amp;
}

} // namespace ncdoa
