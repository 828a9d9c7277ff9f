#include "pabm/spectral.hpp"

#include "pabm/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>
#include <string>

namespace pabm {

namespace {

void check_symmetric(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) throw ParameterError("matrix must be square");
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if (!m.allFinite()) throw ParameterError("matrix has non-finite entries");
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw ParameterError("matrix must be symmetric");
}

}  // namespace

Spectrum spectrum(const Eigen::MatrixXd& m) {
    check_symmetric(m);
    const Eigen::Index n = m.rows();
    Spectrum out;
    if (n == 0) return out;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    if (es.info() != Eigen::Success) throw NumericalError("eigenvalue solver did not converge");
    const Eigen::VectorXd& w = es.eigenvalues();
    const Eigen::MatrixXd& work = es.eigenvectors();

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return std::abs(w[a]) > std::abs(w[b]); });

    out.values.resize(n);
    out.vectors.resize(n, n);
    for (Eigen::Index c = 0; c < n; ++c) {
        const int src = order[static_cast<std::size_t>(c)];
        out.values[c] = w[src];
        auto v = work.col(src);
        Eigen::Index arg = 0;
        v.cwiseAbs().maxCoeff(&arg);
        out.vectors.col(c) = v[arg] < 0.0 ? Eigen::VectorXd(-v) : Eigen::VectorXd(v);
    }
    return out;
}

Embedding embed(const Spectrum& s, int k) {
    const auto n = s.values.size();
    if (k < 1) throw ParameterError("embedding needs k >= 1");
    const Eigen::Index d = static_cast<Eigen::Index>(k) * k;
    if (n < d)
        throw ParameterError("embedding needs n >= k^2 (n = " + std::to_string(n) +
                             ", k = " + std::to_string(k) + ")");
    return Embedding{s.vectors.leftCols(d), s.values.head(d)};
}

Embedding embed(const Eigen::MatrixXd& m, int k) {
    if (k < 1) throw ParameterError("embedding needs k >= 1");
    if (m.rows() < static_cast<Eigen::Index>(k) * k)
        throw ParameterError("embedding needs n >= k^2");
    return embed(spectrum(m), k);
}

SimilarityMatrix cosine_similarity(const Embedding& e) {
    const Eigen::Index n = e.xi.rows();
    // Unit rows, transposed so each node is a contiguous column.
    Eigen::MatrixXd unit = e.xi.transpose();
    std::vector<char> nonzero(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        const double norm = unit.col(i).norm();
        nonzero[static_cast<std::size_t>(i)] = norm >= kZeroRowNorm;
        if (nonzero[static_cast<std::size_t>(i)])
            unit.col(i) /= norm;
        else
            unit.col(i).setZero();
    }
    SimilarityMatrix s{Eigen::MatrixXd(n, n)};
#pragma omp parallel for schedule(dynamic, 16)
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = j + 1; i < n; ++i) {
            const double v = std::min(1.0, std::abs(unit.col(i).dot(unit.col(j))));
            s.tau(i, j) = v;
            s.tau(j, i) = v;
        }
        s.tau(j, j) = nonzero[static_cast<std::size_t>(j)] ? 1.0 : 0.0;
    }
    return s;
}

Histogram histogram_of(std::span<const double> values, int bins) {
    if (bins < 2) throw ParameterError("histogram needs at least two bins");
    Histogram h;
    h.bin_width = 1.0 / bins;
    h.counts.assign(static_cast<std::size_t>(bins), 0);
    for (double v : values) {
        auto b = static_cast<long>(std::floor(v * bins));
        b = std::clamp<long>(b, 0, bins - 1);
        ++h.counts[static_cast<std::size_t>(b)];
    }
    return h;
}

Histogram similarity_histogram(const SimilarityMatrix& s, int bins) {
    if (bins < 2) throw ParameterError("histogram needs at least two bins");
    Histogram h;
    h.bin_width = 1.0 / bins;
    h.counts.assign(static_cast<std::size_t>(bins), 0);
    const Eigen::Index n = s.tau.rows();
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < j; ++i) {
            auto b = static_cast<long>(std::floor(s.tau(i, j) * bins));
            b = std::clamp<long>(b, 0, bins - 1);
            ++h.counts[static_cast<std::size_t>(b)];
        }
    }
    return h;
}

void write_histogram_csv(std::ostream& out, const Histogram& h) {
    out << "bin_left,count\n";
    for (std::size_t b = 0; b < h.counts.size(); ++b)
        out << h.left_edge(static_cast<int>(b)) << ',' << h.counts[b] << '\n';
}

ThresholdChoice steepest_drop_threshold(const Histogram& h, double max_threshold) {
    if (!(max_threshold > 0.0 && max_threshold <= 1.0))
        throw ParameterError("max_threshold must lie in (0,1]");
    const auto occupied = std::count_if(h.counts.begin(), h.counts.end(),
                                        [](std::int64_t c) { return c > 0; });
    if (occupied < 2) {
        std::cerr << "warning: degenerate similarity histogram, using threshold 0.5\n";
        return {0.5, true};
    }
    std::size_t best = 0;
    std::int64_t best_drop = h.counts[0] - h.counts[1];
    for (std::size_t b = 1; b + 1 < h.counts.size(); ++b) {
        if (h.left_edge(static_cast<int>(b) + 1) > max_threshold + 1e-12) break;
        const auto drop = h.counts[b] - h.counts[b + 1];
        if (drop > best_drop) {
            best_drop = drop;
            best = b;
        }
    }
    return {h.left_edge(static_cast<int>(best) + 1), false};
}

ThresholdChoice auto_threshold(const SimilarityMatrix& s, int bins, double max_threshold) {
    if (s.tau.rows() < 2) throw ParameterError("auto_threshold needs n >= 2");
    return steepest_drop_threshold(similarity_histogram(s, bins), max_threshold);
}

ThresholdedMatrix threshold(const SimilarityMatrix& s, double d) {
    if (!(d > 0.0 && d < 1.0)) throw ParameterError("threshold must lie in (0, 1)");
    return ThresholdedMatrix{(s.tau.array() >= d).cast<double>().matrix(), d};
}

}  // namespace pabm
