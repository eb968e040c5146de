#pragma once

// Coherent on-grid DOA estimation: simultaneous orthogonal matching pursuit
// over a dictionary of unit-norm ULA steering vectors.

#include "ncdoa/signal_model.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <utility>
#include <vector>

namespace ncdoa {

struct SteeringDictionary {
    std::vector<double> grid_angles_deg; ///< uniform over [0, 180], strictly increasing
    /// atoms(n, j) = exp(j 2 pi n (d/lambda) cos(grid_angles_deg[j])) / sqrt(N)
    Eigen::MatrixXcd atoms;
    double spacing_ratio = 0.5;

    std::size_t num_bins() const noexcept { return grid_angles_deg.size(); }
    std::size_t num_elements() const noexcept { return static_cast<std::size_t>(atoms.rows()); }
};

struct OmpResult {
    std::vector<double> selected_angles_deg; ///< ascending
    std::vector<std::size_t> selected_indices; ///< in selection order
    double residual_norm = 0.0;
    /// Frobenius residual after each iteration (non-increasing).
    std::vector<double> residual_history;
    /// Set when the selected atoms are close to linearly dependent.
    bool ill_conditioned = false;
    /// d/lambda of the dictionary, used to compare angles by array phase.
    double spacing_ratio = 0.5;
};

/// Throws std::invalid_argument for num_bins < 2 or an invalid geometry.
SteeringDictionary build_dictionary(const ArrayGeometry& geometry, std::size_t num_bins);

/// Simultaneous OMP over all snapshots with exactly `sparsity` iterations.
/// Throws std::invalid_argument when sparsity is 0 or exceeds the bin count,
/// or when snapshot lengths do not match the dictionary.
OmpResult omp_estimate(const SnapshotSet& snapshots, const SteeringDictionary& dict,
                       std::size_t sparsity);

/// Drops the estimate nearest the reference, then pairs the remaining
/// estimates with the non-reference truths by minimum total squared error.
/// Nearness to the reference is the wrapped distance between per-element phase
/// steps, so an atom that aliases onto the reference (179 deg vs 0 deg at
/// d = lambda/2) counts as the reference.
/// Returns (truth, estimate) pairs in truth order.
std::vector<std::pair<double, double>> baseline_mse_angles(const OmpResult& result,
                                                           const TargetScene& truth);

} // namespace ncdoa
