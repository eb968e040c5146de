#pragma once

// Virtual array elements by band-limited interpolation of |y_n|^2, and
// integration of magnitude sequences across snapshots.

#include "ncdoa/signal_model.hpp"

#include <cstddef>
#include <optional>
#include <span>

namespace ncdoa {

struct VirtualArrayConfig {
    std::size_t upsample_factor = 2;
    /// Samples per side used in the sinc sum; nullopt sums the whole sequence.
    std::optional<std::size_t> interpolation_halfwidth;
};

/// True when the magnitude sequence is band-limited below Nyquist for angles
/// in [0, 90] deg: its bandwidth is at most spacing_ratio cycles per element,
/// so spacing_ratio <= 0.5 is required.
bool verify_sampling(const ArrayGeometry& geometry);

/// Evaluates a(m / factor), m = 0 .. factor*(N-1), as a sinc series through the
/// original samples. Samples at integer positions are copied unchanged.
///
/// The series is summed over the mean-removed sequence and the mean added
/// back, so the dominant DC term is reproduced exactly instead of ringing
/// against the truncated array ends. Negative results are clamped to 0.
MagnitudeSequence sinc_interpolate(const MagnitudeSequence& a, const VirtualArrayConfig& cfg);

/// Element-wise mean. Throws std::invalid_argument for an empty or ragged input.
MagnitudeSequence integrate_snapshots(std::span<const MagnitudeSequence> sequences);

} // namespace ncdoa
