#include "pabm/kmeans.hpp"

#include "pabm/error.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace pabm {

void KMeansConfig::validate() const {
    if (restarts < 1) throw ParameterError("k-means needs restarts >= 1");
    if (max_iters < 1) throw ParameterError("k-means needs max_iters >= 1");
    if (!(tol > 0.0)) throw ParameterError("k-means needs tol > 0");
}

namespace {

// Squared distances of every row to one point, clamped at zero.
Eigen::VectorXd sq_dist_to(const Eigen::MatrixXd& rows, const Eigen::VectorXd& sqnorm,
                           const Eigen::RowVectorXd& point) {
    const Eigen::VectorXd p = point.transpose();
    Eigen::VectorXd d(rows.rows());
    d.noalias() = rows * p;
    d = sqnorm - 2.0 * d;
    d.array() += point.squaredNorm();
    return d.cwiseMax(0.0);
}

// rows * centers^T one column at a time; the matrix-vector path is much faster for skinny k.
Eigen::MatrixXd cross_products(const Eigen::MatrixXd& rows, const Eigen::MatrixXd& centers) {
    const Eigen::MatrixXd ct = centers.transpose();
    Eigen::MatrixXd cross(rows.rows(), centers.rows());
    for (Eigen::Index c = 0; c < centers.rows(); ++c) cross.col(c).noalias() = rows * ct.col(c);
    return cross;
}

Eigen::MatrixXd seed_plus_plus(const Eigen::MatrixXd& rows, const Eigen::VectorXd& sqnorm, int k,
                               Rng& rng) {
    const Eigen::Index n = rows.rows();
    Eigen::MatrixXd centers(k, rows.cols());
    std::uniform_int_distribution<Eigen::Index> any(0, n - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    centers.row(0) = rows.row(any(rng));
    Eigen::VectorXd nearest = sq_dist_to(rows, sqnorm, centers.row(0));
    for (int c = 1; c < k; ++c) {
        const double total = nearest.sum();
        Eigen::Index pick = 0;
        if (total > 0.0) {
            const double target = unit(rng) * total;
            double acc = 0.0;
            pick = n - 1;
            for (Eigen::Index i = 0; i < n; ++i) {
                acc += nearest[i];
                if (acc > target && nearest[i] > 0.0) {
                    pick = i;
                    break;
                }
            }
        } else {
            pick = any(rng);
        }
        centers.row(c) = rows.row(pick);
        nearest = nearest.cwiseMin(sq_dist_to(rows, sqnorm, centers.row(c)));
    }
    return centers;
}

Eigen::MatrixXd indicator(const std::vector<int>& labels, int k) {
    Eigen::MatrixXd z = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(labels.size()), k);
    for (std::size_t i = 0; i < labels.size(); ++i) z(static_cast<Eigen::Index>(i), labels[i]) = 1.0;
    return z;
}

// Empty clusters keep their previous center.
Eigen::MatrixXd cluster_means(const Eigen::MatrixXd& rows, const std::vector<int>& labels, int k,
                              const Eigen::MatrixXd& previous) {
    const Eigen::MatrixXd z = indicator(labels, k);
    Eigen::MatrixXd means = z.transpose() * rows;
    const Eigen::VectorXd counts = z.colwise().sum().transpose();
    for (int c = 0; c < k; ++c) {
        if (counts[c] > 0)
            means.row(c) /= counts[c];
        else
            means.row(c) = previous.row(c);
    }
    return means;
}

}  // namespace

double within_cluster_ss(const Eigen::MatrixXd& rows, const LabelVector& labels) {
    if (labels.size() != rows.rows()) throw ParameterError("label count differs from row count");
    const std::vector<int> v(labels.values().begin(), labels.values().end());
    const Eigen::MatrixXd z = indicator(v, labels.k());
    const Eigen::MatrixXd means =
        cluster_means(rows, v, labels.k(), Eigen::MatrixXd::Zero(labels.k(), rows.cols()));
    return (rows - z * means).squaredNorm();
}

ClusterResult kmeans_restart(const Eigen::MatrixXd& rows, int k, const KMeansConfig& cfg,
                             int restart) {
    cfg.validate();
    const Eigen::Index n = rows.rows();
    if (k < 1) throw ParameterError("k-means needs k >= 1");
    if (k > n) throw ParameterError("k-means needs k <= n (k = " + std::to_string(k) + ", n = " +
                                    std::to_string(n) + ")");
    Rng rng(derive_seed(cfg.seed, restart));
    const Eigen::VectorXd sqnorm = rows.rowwise().squaredNorm();
    Eigen::MatrixXd centers = seed_plus_plus(rows, sqnorm, k, rng);

    ClusterResult result;
    result.restart = restart;
    std::vector<int> labels(static_cast<std::size_t>(n), -1);
    std::vector<int> previous;
    Eigen::VectorXd best_d(n);
    for (int iter = 0; iter < cfg.max_iters; ++iter) {
        previous = labels;
        const Eigen::MatrixXd cross = cross_products(rows, centers);
        const Eigen::VectorXd cnorm = centers.rowwise().squaredNorm();
        double obj = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            int arg = 0;
            double best = std::numeric_limits<double>::infinity();
            for (int c = 0; c < k; ++c) {
                const double d = std::max(0.0, sqnorm[i] - 2.0 * cross(i, c) + cnorm[c]);
                if (d < best) {
                    best = d;
                    arg = c;
                }
            }
            labels[static_cast<std::size_t>(i)] = arg;
            best_d[i] = best;
            obj += best;
        }
        const double prev = result.trace.empty() ? 0.0 : result.trace.back();
        result.trace.push_back(obj);

        // An emptied cluster takes over the point farthest from its own center.
        std::vector<int> counts(static_cast<std::size_t>(k), 0);
        for (int x : labels) ++counts[static_cast<std::size_t>(x)];
        for (int c = 0; c < k; ++c) {
            if (counts[static_cast<std::size_t>(c)] > 0) continue;
            Eigen::Index far = -1;
            double far_d = -1.0;
            for (Eigen::Index i = 0; i < n; ++i) {
                if (counts[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])] > 1 &&
                    best_d[i] > far_d) {
                    far_d = best_d[i];
                    far = i;
                }
            }
            if (far < 0) break;
            --counts[static_cast<std::size_t>(labels[static_cast<std::size_t>(far)])];
            labels[static_cast<std::size_t>(far)] = c;
            counts[static_cast<std::size_t>(c)] = 1;
            best_d[far] = 0.0;
        }
        if (labels == previous) break;
        if (iter > 0 && prev - obj <= cfg.tol * std::max(prev, 1e-300)) break;
        centers = cluster_means(rows, labels, k, centers);
    }
    result.labels = LabelVector(std::move(labels), k);
    result.objective = within_cluster_ss(rows, result.labels);
    std::vector<int> v(result.labels.values().begin(), result.labels.values().end());
    result.centers = cluster_means(rows, v, k, centers);
    return result;
}

ClusterResult kmeans(const Eigen::MatrixXd& rows, int k, const KMeansConfig& cfg) {
    cfg.validate();
    // Checked here so nothing throws inside the parallel loop.
    if (k < 1) throw ParameterError("k-means needs k >= 1");
    if (k > rows.rows()) throw ParameterError("k-means needs k <= n");
    std::vector<ClusterResult> runs(static_cast<std::size_t>(cfg.restarts));
#pragma omp parallel for schedule(dynamic, 1)
    for (int r = 0; r < cfg.restarts; ++r) runs[static_cast<std::size_t>(r)] = kmeans_restart(rows, k, cfg, r);
    std::size_t best = 0;
    for (std::size_t r = 1; r < runs.size(); ++r)
        if (runs[r].objective < runs[best].objective) best = r;
    return std::move(runs[best]);
}

}  // namespace pabm
