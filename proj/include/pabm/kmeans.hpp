#pragma once

#include "pabm/graph.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace pabm {

struct KMeansConfig {
    int restarts = 20;
    int max_iters = 100;
    /// Relative objective change that ends Lloyd iterations.
    double tol = 1e-6;
    std::uint64_t seed = 0;

    void validate() const;
};

struct ClusterResult {
    LabelVector labels;
    /// Within-cluster sum of squares around the cluster means.
    double objective = 0.0;
    /// k x p cluster means.
    Eigen::MatrixXd centers;
    int restart = 0;
    /// Assignment cost after each Lloyd assignment step.
    std::vector<double> trace;
};

/// One k-means++ seeded Lloyd run. The seed is derived from (cfg.seed, restart),
/// so any restart can be replayed in isolation.
ClusterResult kmeans_restart(const Eigen::MatrixXd& rows, int k, const KMeansConfig& cfg,
                             int restart);

/// Best of cfg.restarts runs, restarts in parallel. Lowest objective wins; ties
/// go to the lower restart index.
ClusterResult kmeans(const Eigen::MatrixXd& rows, int k, const KMeansConfig& cfg);

double within_cluster_ss(const Eigen::MatrixXd& rows, const LabelVector& labels);

}  // namespace pabm
