#include "ncdoa/coherent_baseline.hpp"

#include "ncdoa/angles.hpp"
#include "ncdoa/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ncdoa {

namespace {

constexpr double kIllConditioned = 1e8;
// Scores this close are treated as equal and the lower grid angle wins. At
// d = lambda/2 the 0 and 180 deg atoms coincide and only rounding separates them.
constexpr double kScoreTieTolerance = 1e-9;

} // namespace

SteeringDictionary build_dictionary(const ArrayGeometry& geometry, std::size_t num_bins)
{
    geometry.validate();
    if (num_bins < 2) throw std::invalid_argument("build_dictionary: num_bins must be >= 2");

    const auto n_el = static_cast<Eigen::Index>(geometry.num_elements);
    const double norm = 1.0 / std::sqrt(static_cast<double>(geometry.num_elements));

    SteeringDictionary dict;
    dict.spacing_ratio = geometry.spacing_ratio;
    dict.grid_angles_deg.resize(num_bins);
    dict.atoms.resize(n_el, static_cast<Eigen::Index>(num_bins));
    for (std::size_t j = 0; j < num_bins; ++j) {
        const double angle = 180.0 * static_cast<double>(j) / static_cast<double>(num_bins - 1);
        dict.grid_angles_deg[j] = angle;
        const double f = geometry.spacing_ratio * std::cos(deg_to_rad(angle));
        for (Eigen::Index n = 0; n < n_el; ++n) {
            dict.atoms(n, static_cast<Eigen::Index>(j)) =
                std::polar(norm, 2.0 * std::numbers::pi * f * static_cast<double>(n));
        }
    }
    return dict;
}

OmpResult omp_estimate(const SnapshotSet& snapshots, const SteeringDictionary& dict,
                       std::size_t sparsity)
{
    if (sparsity == 0) throw std::invalid_argument("omp_estimate: sparsity must be >= 1");
    if (sparsity > dict.num_bins()) {
        throw std::invalid_argument("omp_estimate: sparsity " + std::to_string(sparsity) +
                                    " exceeds dictionary size " +
                                    std::to_string(dict.num_bins()));
    }
    if (snapshots.empty()) throw std::invalid_argument("omp_estimate: no snapshots");

    const Eigen::Index n_el = dict.atoms.rows();
    const auto n_snap = static_cast<Eigen::Index>(snapshots.size());
    Eigen::MatrixXcd y(n_el, n_snap);
    for (Eigen::Index t = 0; t < n_snap; ++t) {
        const auto& s = snapshots[static_cast<std::size_t>(t)].samples;
        if (static_cast<Eigen::Index>(s.size()) != n_el) {
            throw std::invalid_argument("omp_estimate: snapshot length does not match dictionary");
        }
        y.col(t) = Eigen::Map<const Eigen::VectorXcd>(s.data(), n_el);
    }

    OmpResult result;
    result.spacing_ratio = dict.spacing_ratio;
    Eigen::MatrixXcd residual = y;
    Eigen::MatrixXcd support(n_el, 0);
    std::vector<bool> used(dict.num_bins(), false);

    for (std::size_t it = 0; it < sparsity; ++it) {
        const Eigen::VectorXd score =
            (dict.atoms.adjoint() * residual).cwiseAbs2().rowwise().sum();

        Eigen::Index best = -1;
        for (Eigen::Index j = 0; j < score.size(); ++j) {
            if (used[static_cast<std::size_t>(j)]) continue;
            if (best < 0 || score(j) > score(best) * (1.0 + kScoreTieTolerance)) best = j;
        }
        used[static_cast<std::size_t>(best)] = true;
        result.selected_indices.push_back(static_cast<std::size_t>(best));

        support.conservativeResize(Eigen::NoChange, support.cols() + 1);
        support.col(support.cols() - 1) = dict.atoms.col(best);

        const Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(support);
        const Eigen::MatrixXcd coeffs = qr.solve(y);
        residual = y - support * coeffs;
        result.residual_history.push_back(residual.norm());

        const auto& r = qr.matrixR();
        const double rmax = std::abs(r(0, 0));
        const double rmin = std::abs(r(support.cols() - 1, support.cols() - 1));
        if (rmin * kIllConditioned < rmax) result.ill_conditioned = true;
    }

    result.residual_norm = result.residual_history.back();
    for (auto idx : result.selected_indices) {
        result.selected_angles_deg.push_back(dict.grid_angles_deg[idx]);
    }
    std::sort(result.selected_angles_deg.begin(), result.selected_angles_deg.end());
    return result;
}

std::vector<std::pair<double, double>> baseline_mse_angles(const OmpResult& result,
                                                           const TargetScene& truth)
{
    const auto unknown = truth.unknown_angles();
    const auto& est = result.selected_angles_deg;
    if (est.size() < unknown.size() + 1) {
        throw std::invalid_argument(
            "baseline_mse_angles: need one estimate per target including the reference");
    }

    const double spacing = result.spacing_ratio;
    const double ref_step = spacing * std::cos(deg_to_rad(truth.reference().angle_deg));
    auto phase_distance = [&](double angle) {
        const double diff = spacing * std::cos(deg_to_rad(angle)) - ref_step;
        return std::abs(diff - std::round(diff));
    };
    // Ties (exact aliases) fall back to the plain angular distance.
    const double ref = truth.reference().angle_deg;
    const auto nearest = std::min_element(est.begin(), est.end(), [&](double a, double b) {
        const double da = phase_distance(a), db = phase_distance(b);
        if (da != db) return da < db;
        return std::abs(a - ref) < std::abs(b - ref);
    });
    std::vector<double> remaining;
    for (auto it = est.begin(); it != est.end(); ++it) {
        if (it != nearest) remaining.push_back(*it);
    }

    const auto idx = best_assignment(unknown, remaining);
    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(unknown.size());
    for (std::size_t i = 0; i < unknown.size(); ++i) pairs.emplace_back(unknown[i], remaining[idx[i]]);
    return pairs;
}

} // namespace ncdoa
