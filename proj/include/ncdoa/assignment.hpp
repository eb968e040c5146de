#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ncdoa {

/// Minimum total squared-error matching of `truth` to distinct entries of
/// `estimates` (estimates.size() >= truth.size()). Returns, for each truth
/// entry, the index of its estimate. Exhaustive search; meant for a handful of
/// targets.
std::vector<std::size_t> best_assignment(std::span<const double> truth,
                                         std::span<const double> estimates);

/// Total squared error of the best assignment.
double assigned_squared_error(std::span<const double> truth, std::span<const double> estimates);

} // namespace ncdoa
