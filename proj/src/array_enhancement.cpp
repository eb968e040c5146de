#include "ncdoa/array_enhancement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace ncdoa {

bool verify_sampling(const ArrayGeometry& geometry)
{
    // cos spread over [0, 90] deg is 1, so the bandwidth is spacing_ratio.
    return geometry.spacing_ratio > 0.0 && geometry.spacing_ratio <= 0.5;
}

MagnitudeSequence sinc_interpolate(const MagnitudeSequence& a, const VirtualArrayConfig& cfg)
{
    if (cfg.upsample_factor < 1) {
        throw std::invalid_argument("sinc_interpolate: upsample_factor must be >= 1");
    }
    const std::size_t n = a.size();
    const std::size_t factor = cfg.upsample_factor;
    if (factor == 1 || n < 2) return a;

    const double mean =
        std::accumulate(a.values.begin(), a.values.end(), 0.0) / static_cast<double>(n);
    std::vector<double> centred(n);
    for (std::size_t i = 0; i < n; ++i) centred[i] = a.values[i] - mean;

    const std::ptrdiff_t last = static_cast<std::ptrdiff_t>(n) - 1;
    const std::ptrdiff_t halfwidth = cfg.interpolation_halfwidth
                                         ? static_cast<std::ptrdiff_t>(*cfg.interpolation_halfwidth)
                                         : last + 1;

    MagnitudeSequence out;
    out.values.resize(factor * (n - 1) + 1);
    for (std::size_t m = 0; m < out.values.size(); ++m) {
        if (m % factor == 0) {
            out.values[m] = a.values[m / factor];
            continue;
        }
        const double s = static_cast<double>(m) / static_cast<double>(factor);
        const auto base = static_cast<std::ptrdiff_t>(m / factor);
        const std::ptrdiff_t k0 = std::max<std::ptrdiff_t>(0, base - halfwidth + 1);
        const std::ptrdiff_t k1 = std::min<std::ptrdiff_t>(last, base + halfwidth);

        // sin(pi (s - k)) = (-1)^k sin(pi s): one sine per output point.
        const double sin_ps = std::sin(std::numbers::pi * s);
        double acc = 0.0;
        for (std::ptrdiff_t k = k0; k <= k1; ++k) {
            const double term = centred[static_cast<std::size_t>(k)] / (s - static_cast<double>(k));
            acc += (k % 2 == 0) ? term : -term;
        }
        out.values[m] = std::max(0.0, mean + acc * sin_ps / std::numbers::pi);
    }
    return out;
}

MagnitudeSequence integrate_snapshots(std::span<const MagnitudeSequence> sequences)
{
    if (sequences.empty()) throw std::invalid_argument("integrate_snapshots: empty input");
    const std::size_t n = sequences.front().size();
    MagnitudeSequence out;
    out.values.assign(n, 0.0);
    for (const auto& seq : sequences) {
        if (seq.size() != n) {
            throw std::invalid_argument("integrate_snapshots: sequences differ in length");
        }
        for (std::size_t i = 0; i < n; ++i) out.values[i] += seq.values[i];
    }
    const double scale = 1.0 / static_cast<double>(sequences.size());
    for (auto& v : out.values) v *= scale;
    return out;
}

} // namespace ncdoa
