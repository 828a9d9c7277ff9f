#include "pabm/refine.hpp"

#include "pabm/error.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <string>

namespace pabm {

void RefineConfig::validate() const {
    if (steps != 1 && steps != 2) throw ParameterError("refinement steps must be 1 or 2");
    if (min_cluster_guard < 1) throw ParameterError("min_cluster_guard must be >= 1");
}

Eigen::VectorXd CommunitySlices::row_slice(const Eigen::MatrixXd& a, int i, int l) const {
    const auto& cols = columns[static_cast<std::size_t>(l)];
    Eigen::VectorXd v(static_cast<Eigen::Index>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) v[static_cast<Eigen::Index>(j)] = a(i, cols[j]);
    return v;
}

Eigen::VectorXd CommunitySlices::mean_slice(int k, int l) const {
    const auto& cols = columns[static_cast<std::size_t>(l)];
    Eigen::VectorXd v(static_cast<Eigen::Index>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) v[static_cast<Eigen::Index>(j)] = mean_rows(k, cols[j]);
    return v;
}

namespace {

void check_square(const Eigen::MatrixXd& a, const LabelVector& c) {
    if (a.rows() != a.cols()) throw ParameterError("refinement needs a square matrix");
    if (a.rows() != c.size()) throw ParameterError("label vector length differs from matrix size");
}

void check_populated(const LabelVector& c, int guard, const LabelVector& last_valid, int step) {
    const auto sizes = community_sizes(c);
    for (std::size_t k = 0; k < sizes.size(); ++k) {
        if (sizes[k] < guard) {
            throw ClusterCollapse("community " + std::to_string(k + 1) + " has " +
                                      std::to_string(sizes[k]) + " members (minimum " +
                                      std::to_string(guard) + ")",
                                  last_valid, step);
        }
    }
}

}  // namespace

CommunitySlices community_slices(const Eigen::MatrixXd& a, const LabelVector& c) {
    check_square(a, c);
    check_populated(c, 1, c, 0);
    const int k = c.k();
    CommunitySlices s;
    s.columns = community_members(c);
    s.sizes = community_sizes(c);
    s.mean_rows = Eigen::MatrixXd::Zero(k, a.cols());
    for (int v = 0; v < c.size(); ++v) s.mean_rows.row(c[v]) += a.row(v);
    for (int kk = 0; kk < k; ++kk) s.mean_rows.row(kk) /= s.sizes[static_cast<std::size_t>(kk)];
    return s;
}

ScoreMatrix refine_scores(const Eigen::MatrixXd& a, const LabelVector& c, bool leave_one_out) {
    const CommunitySlices slices = community_slices(a, c);
    const int n = c.size();
    const int k = c.k();
    const Eigen::MatrixXd& mean = slices.mean_rows;  // K x n, community index contiguous

    // ||Abar^{(k,l)}||, stored k + K*l
    Eigen::VectorXd mean_norm = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(k) * k);
    for (int j = 0; j < n; ++j)
        for (int kk = 0; kk < k; ++kk) mean_norm[kk + k * c[j]] += mean(kk, j) * mean(kk, j);
    mean_norm = mean_norm.cwiseSqrt();

    ScoreMatrix out{Eigen::MatrixXd::Zero(n, k)};
#pragma omp parallel
    {
        Eigen::VectorXd row_sq(k);
        Eigen::MatrixXd dot(k, k);  // (community k, slice l)
#pragma omp for schedule(static)
        for (int i = 0; i < n; ++i) {
            row_sq.setZero();
            dot.setZero();
            for (int j = 0; j < n; ++j) {
                const double x = a(i, j);
                if (x == 0.0) continue;
                const int l = c[j];
                row_sq[l] += x * x;
                dot.col(l) += x * mean.col(j);
            }
            if (leave_one_out) {
                // Abar_{-i} = Abar - A_i / n_k for i's own community; the norm stays full.
                const int own = c[i];
                dot.row(own) -= row_sq.transpose() / slices.sizes[static_cast<std::size_t>(own)];
            }
            for (int kk = 0; kk < k; ++kk) {
                double total = 0.0;
                for (int l = 0; l < k; ++l) {
                    const double denom = std::sqrt(row_sq[l]) * mean_norm[kk + k * l];
                    if (denom > 0.0) total += dot(kk, l) / denom;
                }
                out.s(i, kk) = total;
            }
        }
    }
    return out;
}

LabelVector argmax_labels(const ScoreMatrix& scores, const LabelVector& current) {
    const auto n = static_cast<int>(scores.s.rows());
    const auto k = static_cast<int>(scores.s.cols());
    std::vector<int> next(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const int own = current[i];
        int arg = own;
        double best = scores.s(i, own);
        for (int kk = 0; kk < k; ++kk) {
            if (scores.s(i, kk) > best) {
                best = scores.s(i, kk);
                arg = kk;
            }
        }
        next[static_cast<std::size_t>(i)] = arg;
    }
    return LabelVector(std::move(next), k);
}

LabelVector refine_step(const Eigen::MatrixXd& a, const LabelVector& c, bool leave_one_out,
                        int min_cluster_guard) {
    LabelVector next = argmax_labels(refine_scores(a, c, leave_one_out), c);
    check_populated(next, min_cluster_guard, c, 1);
    return next;
}

RefinedClustering r_tcsc(const Spectrum& s, const Eigen::MatrixXd& a, int k,
                         const RefineConfig& cfg, const TcscOptions& opts) {
    cfg.validate();
    RefinedClustering out;
    TcscResult init = tcsc_detailed(s, k, opts);
    out.threshold = init.threshold;
    out.stages.push_back(std::move(init.labels));
    check_populated(out.stages.back(), cfg.min_cluster_guard, out.stages.back(), 0);
    for (int t = 1; t <= cfg.steps; ++t) {
        try {
            out.stages.push_back(
                refine_step(a, out.stages.back(), cfg.leave_one_out, cfg.min_cluster_guard));
        } catch (const ClusterCollapse& e) {
            throw ClusterCollapse(std::string("refinement step ") + std::to_string(t) + ": " + e.what(),
                                  out.stages.back(), t);
        }
    }
    return out;
}

LabelVector r_tcsc(const AdjacencyMatrix& a, int k, const RefineConfig& cfg,
                   const TcscOptions& opts) {
    if (static_cast<long long>(k) * k > a.n()) throw ParameterError("R-TCSC needs n >= k^2");
    return r_tcsc(spectrum(a.matrix()), a.matrix(), k, cfg, opts).labels();
}

void write_scores_csv(std::ostream& out, const ScoreMatrix& scores, const LabelVector& truth,
                      const LabelVector& estimate) {
    const auto k = scores.s.cols();
    out << "node";
    for (Eigen::Index kk = 0; kk < k; ++kk) out << ",S_" << kk + 1;
    out << ",truth,estimate\n" << std::setprecision(17);
    for (Eigen::Index i = 0; i < scores.s.rows(); ++i) {
        out << i + 1;
        for (Eigen::Index kk = 0; kk < k; ++kk) out << ',' << scores.s(i, kk);
        out << ',' << truth[static_cast<int>(i)] + 1 << ',' << estimate[static_cast<int>(i)] + 1 << '\n';
    }
}

}  // namespace pabm
