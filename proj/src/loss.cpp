#include "pabm/loss.hpp"

#include "pabm/error.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace pabm {

Eigen::MatrixXi agreement_matrix(const LabelVector& truth, const LabelVector& est) {
    if (truth.size() != est.size()) throw ParameterError("label vectors differ in length");
    const int k = std::max(truth.k(), est.k());
    Eigen::MatrixXi m = Eigen::MatrixXi::Zero(k, k);
    for (int i = 0; i < truth.size(); ++i) ++m(truth[i], est[i]);
    return m;
}

std::vector<int> assignment_exhaustive(const Eigen::MatrixXi& weights) {
    const auto k = static_cast<int>(weights.rows());
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> best = perm;
    long long best_w = -1;
    do {
        long long w = 0;
        for (int e = 0; e < k; ++e) w += weights(perm[static_cast<std::size_t>(e)], e);
        if (w > best_w) {
            best_w = w;
            best = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

std::vector<int> assignment_hungarian(const Eigen::MatrixXi& weights) {
    // Shortest augmenting path with potentials on cost = max - weight.
    // Rows of the cost matrix are columns of `weights` (estimated labels).
    const auto k = static_cast<int>(weights.rows());
    if (k == 0) return {};
    const long long top = weights.maxCoeff();
    auto cost = [&](int e, int t) { return top - static_cast<long long>(weights(t, e)); };
    constexpr long long inf = std::numeric_limits<long long>::max() / 4;
    std::vector<long long> u(static_cast<std::size_t>(k) + 1, 0), v(static_cast<std::size_t>(k) + 1, 0);
    std::vector<int> match(static_cast<std::size_t>(k) + 1, 0), way(static_cast<std::size_t>(k) + 1, 0);
    for (int e = 1; e <= k; ++e) {
        match[0] = e;
        int j0 = 0;
        std::vector<long long> minv(static_cast<std::size_t>(k) + 1, inf);
        std::vector<char> used(static_cast<std::size_t>(k) + 1, 0);
        do {
            used[static_cast<std::size_t>(j0)] = 1;
            const int i0 = match[static_cast<std::size_t>(j0)];
            long long delta = inf;
            int j1 = 0;
            for (int j = 1; j <= k; ++j) {
                if (used[static_cast<std::size_t>(j)]) continue;
                const long long cur = cost(i0 - 1, j - 1) - u[static_cast<std::size_t>(i0)] - v[static_cast<std::size_t>(j)];
                if (cur < minv[static_cast<std::size_t>(j)]) {
                    minv[static_cast<std::size_t>(j)] = cur;
                    way[static_cast<std::size_t>(j)] = j0;
                }
                if (minv[static_cast<std::size_t>(j)] < delta) {
                    delta = minv[static_cast<std::size_t>(j)];
                    j1 = j;
                }
            }
            for (int j = 0; j <= k; ++j) {
                if (used[static_cast<std::size_t>(j)]) {
                    u[static_cast<std::size_t>(match[static_cast<std::size_t>(j)])] += delta;
                    v[static_cast<std::size_t>(j)] -= delta;
                } else {
                    minv[static_cast<std::size_t>(j)] -= delta;
                }
            }
            j0 = j1;
        } while (match[static_cast<std::size_t>(j0)] != 0);
        do {
            const int j1 = way[static_cast<std::size_t>(j0)];
            match[static_cast<std::size_t>(j0)] = match[static_cast<std::size_t>(j1)];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<int> perm(static_cast<std::size_t>(k));
    for (int t = 1; t <= k; ++t) perm[static_cast<std::size_t>(match[static_cast<std::size_t>(t)] - 1)] = t - 1;
    return perm;
}

namespace {

LossReport report_for(const LabelVector& truth, const LabelVector& est, std::vector<int> perm) {
    LossReport r;
    for (int i = 0; i < truth.size(); ++i)
        if (perm[static_cast<std::size_t>(est[i])] != truth[i]) r.misclustered.push_back(i);
    r.loss = truth.size() == 0 ? 0.0
                               : static_cast<double>(r.misclustered.size()) / truth.size();
    r.best_permutation = std::move(perm);
    return r;
}

}  // namespace

LossReport misclustering_loss_exhaustive(const LabelVector& truth, const LabelVector& est) {
    return report_for(truth, est, assignment_exhaustive(agreement_matrix(truth, est)));
}

LossReport misclustering_loss_hungarian(const LabelVector& truth, const LabelVector& est) {
    return report_for(truth, est, assignment_hungarian(agreement_matrix(truth, est)));
}

LossReport misclustering_loss(const LabelVector& truth, const LabelVector& est) {
    if (std::max(truth.k(), est.k()) <= kExhaustiveMaxK) return misclustering_loss_exhaustive(truth, est);
    return misclustering_loss_hungarian(truth, est);
}

double accuracy(const LabelVector& truth, const LabelVector& est) {
    return 1.0 - misclustering_loss(truth, est).loss;
}

}  // namespace pabm
