#include "pabm/error.hpp"
#include "pabm/kmeans.hpp"
#include "pabm/reference.hpp"

#include <gtest/gtest.h>

#include <limits>
#include <vector>

using namespace pabm;

namespace {

Eigen::MatrixXd random_rows(int n, int p, std::uint64_t seed) {
    Rng rng(seed);
    std::normal_distribution<double> g;
    return Eigen::MatrixXd::NullaryExpr(n, p, [&] { return g(rng); });
}

// Smallest within-cluster sum of squares over every labeling with k non-empty clusters.
double brute_force_optimum(const Eigen::MatrixXd& rows, int k) {
    const int n = static_cast<int>(rows.rows());
    std::vector<int> labels(static_cast<std::size_t>(n), 0);
    double best = std::numeric_limits<double>::infinity();
    while (true) {
        std::vector<int> sizes(static_cast<std::size_t>(k), 0);
        for (int x : labels) ++sizes[static_cast<std::size_t>(x)];
        if (std::find(sizes.begin(), sizes.end(), 0) == sizes.end())
            best = std::min(best, within_cluster_ss(rows, LabelVector(labels, k)));
        int pos = 0;
        while (pos < n && ++labels[static_cast<std::size_t>(pos)] == k) labels[static_cast<std::size_t>(pos++)] = 0;
        if (pos == n) break;
    }
    return best;
}

}  // namespace

TEST(KMeans, MatchesBruteForceOnSixPoints) {
    for (int trial = 0; trial < 10; ++trial) {
        const auto rows = random_rows(6, 3, derive_seed(10, trial));
        for (int k = 2; k <= 3; ++k) {
            KMeansConfig cfg;
            cfg.seed = static_cast<std::uint64_t>(trial);
            const auto r = kmeans(rows, k, cfg);
            EXPECT_NEAR(r.objective, brute_force_optimum(rows, k), 1e-9) << "trial " << trial << " k " << k;
        }
    }
}

TEST(KMeans, IndicatorRowsExact) {
    Eigen::MatrixXd rows = Eigen::MatrixXd::Zero(9, 9);
    for (int i = 0; i < 9; ++i) rows.block(i, 3 * (i / 3), 1, 3).setOnes();
    const auto r = kmeans(rows, 3, KMeansConfig{});
    EXPECT_EQ(r.objective, 0.0);
    for (int i = 0; i < 9; ++i) EXPECT_EQ(r.labels[i], r.labels[3 * (i / 3)]);
    EXPECT_NE(r.labels[0], r.labels[3]);
    EXPECT_NE(r.labels[3], r.labels[6]);
}

TEST(KMeans, TraceNonIncreasing) {
    const auto rows = random_rows(200, 5, 3);
    KMeansConfig cfg;
    cfg.tol = 1e-12;
    for (int r = 0; r < 10; ++r) {
        const auto res = kmeans_restart(rows, 4, cfg, r);
        ASSERT_FALSE(res.trace.empty());
        for (std::size_t t = 1; t < res.trace.size(); ++t)
            EXPECT_LE(res.trace[t], res.trace[t - 1] * (1 + 1e-12)) << "restart " << r << " iter " << t;
    }
}

TEST(KMeans, ObjectiveIsWithinClusterSS) {
    const auto rows = random_rows(50, 4, 5);
    const auto r = kmeans(rows, 3, KMeansConfig{});
    EXPECT_NEAR(r.objective, within_cluster_ss(rows, r.labels), 1e-9);
    EXPECT_EQ(r.centers.rows(), 3);
    EXPECT_EQ(r.centers.cols(), 4);
}

TEST(KMeans, ParallelMatchesSerialReference) {
    const auto rows = random_rows(120, 6, 7);
    KMeansConfig cfg;
    cfg.seed = 99;
    const auto par = kmeans(rows, 4, cfg);
    const auto ser = reference::kmeans(rows, 4, cfg);
    EXPECT_EQ(par.labels, ser.labels);
    EXPECT_EQ(par.restart, ser.restart);
    EXPECT_EQ(par.objective, ser.objective);
}

TEST(KMeans, BestRestartIsLowestObjective) {
    const auto rows = random_rows(80, 3, 8);
    KMeansConfig cfg;
    cfg.seed = 4;
    const auto best = kmeans(rows, 5, cfg);
    for (int r = 0; r < cfg.restarts; ++r) {
        const auto one = kmeans_restart(rows, 5, cfg, r);
        EXPECT_GE(one.objective, best.objective);
        if (r < best.restart) EXPECT_GT(one.objective, best.objective);
    }
}

TEST(KMeans, Deterministic) {
    const auto rows = random_rows(60, 4, 9);
    KMeansConfig cfg;
    cfg.seed = 1;
    EXPECT_EQ(kmeans(rows, 3, cfg).labels, kmeans(rows, 3, cfg).labels);
}

TEST(KMeans, DuplicateRowsStillFillEveryCluster) {
    // Two distinct points, three clusters: some restart must place a duplicate alone.
    Eigen::MatrixXd rows(6, 1);
    rows << 0, 0, 0, 1, 1, 1;
    const auto r = kmeans(rows, 3, KMeansConfig{});
    const auto sizes = community_sizes(r.labels);
    for (int s : sizes) EXPECT_GE(s, 1);
    EXPECT_EQ(r.objective, 0.0);
}

TEST(KMeans, KEqualsOne) {
    const auto rows = random_rows(10, 2, 11);
    const auto r = kmeans(rows, 1, KMeansConfig{});
    const Eigen::RowVectorXd mean = rows.colwise().mean();
    EXPECT_NEAR(r.objective, (rows.rowwise() - mean).squaredNorm(), 1e-10);
}

TEST(KMeans, RejectsBadArguments) {
    const auto rows = random_rows(4, 2, 12);
    EXPECT_THROW(kmeans(rows, 5, KMeansConfig{}), ParameterError);
    EXPECT_THROW(kmeans(rows, 0, KMeansConfig{}), ParameterError);
    KMeansConfig bad;
    bad.restarts = 0;
    EXPECT_THROW(kmeans(rows, 2, bad), ParameterError);
}
