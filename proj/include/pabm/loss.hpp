#pragma once

#include "pabm/graph.hpp"

#include <Eigen/Dense>

#include <vector>

namespace pabm {

struct LossReport {
    double loss = 0.0;
    /// best_permutation[e] = truth community matched to estimated community e (0-based).
    std::vector<int> best_permutation;
    /// 0-based nodes whose mapped label disagrees with the truth.
    std::vector<int> misclustered;
};

/// K x K counts, entry (t, e) = #{i : truth(i) = t, est(i) = e}, K = max of the two k's.
Eigen::MatrixXi agreement_matrix(const LabelVector& truth, const LabelVector& est);

/// Maximum-weight perfect matching. Result maps column -> row.
std::vector<int> assignment_exhaustive(const Eigen::MatrixXi& weights);
std::vector<int> assignment_hungarian(const Eigen::MatrixXi& weights);

inline constexpr int kExhaustiveMaxK = 8;

/// Minimum disagreement over bijective relabelings; exhaustive up to K = 8,
/// Hungarian beyond.
LossReport misclustering_loss(const LabelVector& truth, const LabelVector& est);
LossReport misclustering_loss_exhaustive(const LabelVector& truth, const LabelVector& est);
LossReport misclustering_loss_hungarian(const LabelVector& truth, const LabelVector& est);

double accuracy(const LabelVector& truth, const LabelVector& est);

}  // namespace pabm
