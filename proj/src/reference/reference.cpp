#include "pabm/reference.hpp"

#include <cmath>

namespace pabm::reference {

SimilarityMatrix cosine_similarity(const Embedding& e) {
    const Eigen::Index n = e.xi.rows();
    SimilarityMatrix s{Eigen::MatrixXd::Zero(n, n)};
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const double ni = e.xi.row(i).norm();
            const double nj = e.xi.row(j).norm();
            if (ni < kZeroRowNorm || nj < kZeroRowNorm) continue;
            s.tau(i, j) = std::abs(e.xi.row(i).dot(e.xi.row(j))) / (ni * nj);
        }
    }
    return s;
}

namespace {

double cosine_term(const Eigen::VectorXd& x, const Eigen::VectorXd& y, double y_norm) {
    const double denom = x.norm() * y_norm;
    return denom > 0.0 ? x.dot(y) / denom : 0.0;
}

}  // namespace

ScoreMatrix refine_scores(const Eigen::MatrixXd& a, const LabelVector& c, bool leave_one_out) {
    const CommunitySlices slices = community_slices(a, c);
    const int n = c.size();
    const int k = c.k();
    ScoreMatrix out{Eigen::MatrixXd::Zero(n, k)};
    for (int i = 0; i < n; ++i) {
        for (int kk = 0; kk < k; ++kk) {
            for (int l = 0; l < k; ++l) {
                const Eigen::VectorXd ai = slices.row_slice(a, i, l);
                const Eigen::VectorXd full = slices.mean_slice(kk, l);
                Eigen::VectorXd partner = full;
                if (leave_one_out) {
                    partner.setZero();
                    for (int v = 0; v < n; ++v)
                        if (c[v] == kk && v != i) partner += slices.row_slice(a, v, l);
                    partner /= slices.sizes[static_cast<std::size_t>(kk)];
                }
                out.s(i, kk) += cosine_term(ai, partner, full.norm());
            }
        }
    }
    return out;
}

ClusterResult kmeans(const Eigen::MatrixXd& rows, int k, const KMeansConfig& cfg) {
    cfg.validate();
    ClusterResult best = kmeans_restart(rows, k, cfg, 0);
    for (int r = 1; r < cfg.restarts; ++r) {
        ClusterResult run = kmeans_restart(rows, k, cfg, r);
        if (run.objective < best.objective) best = std::move(run);
    }
    return best;
}

}  // namespace pabm::reference
