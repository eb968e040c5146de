#include "ncdoa/assignment.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace ncdoa {

std::vector<std::size_t> best_assignment(std::span<const double> truth,
                                         std::span<const double> estimates)
{
    if (estimates.size() < truth.size()) {
        throw std::invalid_argument("best_assignment: fewer estimates than truths");
    }
    if (estimates.size() > 9) {
        throw std::invalid_argument("best_assignment: too many estimates for exhaustive search");
    }

    std::vector<std::size_t> perm(estimates.size());
    std::iota(perm.begin(), perm.end(), 0);

    std::vector<std::size_t> best(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(truth.size()));
    double best_cost = std::numeric_limits<double>::infinity();
    do {
        double cost = 0.0;
        for (std::size_t i = 0; i < truth.size(); ++i) {
            const double e = truth[i] - estimates[perm[i]];
            cost += e * e;
        }
        if (cost < best_cost) {
            best_cost = cost;
            std::copy_n(perm.begin(), truth.size(), best.begin());
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

double assigned_squared_error(std::span<const double> truth, std::span<const double> estimates)
{
    const auto idx = best_assignment(truth, estimates);
    double total = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const double e = truth[i] - estimates[idx[i]];
        total += e * e;
    }
    return total;
}

} // namespace ncdoa
