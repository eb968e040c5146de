#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace ncdoa::detail {

/// Forward DFT of `input` zero-padded to `length` points (complex-to-complex,
/// so every output bin is computed rather than mirrored).
std::vector<std::complex<double>> forward_dft(std::span<const double> input, std::size_t length);

std::size_t next_pow2(std::size_t n);

} // namespace ncdoa::detail
