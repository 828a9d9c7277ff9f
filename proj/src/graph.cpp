#include "pabm/graph.hpp"

#include "pabm/error.hpp"

#include <algorithm>
#include <ostream>
#include <string>

namespace pabm {

LabelVector::LabelVector(std::vector<int> zero_based, int k) : labels_(std::move(zero_based)), k_(k) {
    if (k_ < 1) throw ParameterError("label vector needs k >= 1, got " + std::to_string(k_));
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i] < 0 || labels_[i] >= k_) {
            throw ParameterError("label " + std::to_string(labels_[i] + 1) + " of node " +
                                 std::to_string(i + 1) + " outside [1, " + std::to_string(k_) + "]");
        }
    }
}

LabelVector LabelVector::from_one_based(std::span<const int> labels, int k) {
    std::vector<int> v(labels.begin(), labels.end());
    for (int& x : v) --x;
    return LabelVector(std::move(v), k);
}

LabelVector LabelVector::constant(int n, int k) {
    return LabelVector(std::vector<int>(static_cast<std::size_t>(n), 0), k);
}

std::vector<int> LabelVector::one_based() const {
    std::vector<int> v = labels_;
    for (int& x : v) ++x;
    return v;
}

std::ostream& operator<<(std::ostream& out, const LabelVector& c) {
    out << "K=" << c.k() << ":";
    for (int x : c.values()) out << ' ' << x + 1;
    return out;
}

std::vector<int> community_sizes(const LabelVector& c) {
    std::vector<int> counts(static_cast<std::size_t>(c.k()), 0);
    for (int x : c.values()) ++counts[static_cast<std::size_t>(x)];
    return counts;
}

std::vector<std::vector<int>> community_members(const LabelVector& c) {
    std::vector<std::vector<int>> members(static_cast<std::size_t>(c.k()));
    for (int i = 0; i < c.size(); ++i) members[static_cast<std::size_t>(c[i])].push_back(i);
    return members;
}

AdjacencyMatrix::AdjacencyMatrix(int n) : m_(Eigen::MatrixXd::Zero(n, n)) {
    if (n < 0) throw ParameterError("negative node count");
}

AdjacencyMatrix::AdjacencyMatrix(Eigen::MatrixXd entries) : m_(std::move(entries)) {
    if (m_.rows() != m_.cols()) throw ParameterError("adjacency matrix must be square");
    const Eigen::Index n = m_.rows();
    for (Eigen::Index j = 0; j < n; ++j) {
        if (m_(j, j) != 0.0) throw ParameterError("adjacency matrix has a self-loop");
        for (Eigen::Index i = 0; i < n; ++i) {
            const double v = m_(i, j);
            if (v != 0.0 && v != 1.0) throw ParameterError("adjacency entries must be 0 or 1");
            if (v != m_(j, i)) throw ParameterError("adjacency matrix must be symmetric");
        }
    }
}

AdjacencyMatrix AdjacencyMatrix::from_edges(int n, std::span<const std::pair<int, int>> edges) {
    AdjacencyMatrix a(n);
    for (auto [i, j] : edges) {
        if (i < 0 || i >= n || j < 0 || j >= n) throw RangeError("edge endpoint outside graph");
        if (i == j) continue;
        a.m_(i, j) = 1.0;
        a.m_(j, i) = 1.0;
    }
    return a;
}

int AdjacencyMatrix::degree(int i) const { return static_cast<int>(m_.col(i).sum()); }

std::int64_t AdjacencyMatrix::edge_count() const {
    return static_cast<std::int64_t>(m_.sum()) / 2;
}

std::vector<std::pair<int, int>> AdjacencyMatrix::edges() const {
    std::vector<std::pair<int, int>> out;
    const int nn = n();
    for (int i = 0; i < nn; ++i)
        for (int j = i + 1; j < nn; ++j)
            if (m_(i, j) != 0.0) out.emplace_back(i, j);
    return out;
}

AdjacencyMatrix AdjacencyMatrix::induced(std::span<const int> nodes) const {
    const auto m = static_cast<Eigen::Index>(nodes.size());
    AdjacencyMatrix sub;
    sub.m_.resize(m, m);
    for (Eigen::Index c = 0; c < m; ++c)
        for (Eigen::Index r = 0; r < m; ++r)
            sub.m_(r, c) = m_(nodes[static_cast<std::size_t>(r)], nodes[static_cast<std::size_t>(c)]);
    return sub;
}

namespace {

PrunedGraph restrict_to(const AdjacencyMatrix& a, const LabelVector& c, std::span<const int> keep) {
    PrunedGraph out;
    out.adjacency = a.induced(keep);
    std::vector<int> labels;
    labels.reserve(keep.size());
    for (std::size_t r = 0; r < keep.size(); ++r) {
        labels.push_back(c[keep[r]]);
        out.index_map.emplace_back(keep[r] + 1, static_cast<int>(r) + 1);
    }
    out.labels = LabelVector(std::move(labels), c.k());
    return out;
}

}  // namespace

PrunedGraph prune_isolated(const AdjacencyMatrix& a, const LabelVector& c) {
    if (c.size() != a.n()) throw ParameterError("label vector length differs from node count");
    std::vector<int> keep;
    for (int i = 0; i < a.n(); ++i)
        if (a.degree(i) > 0) keep.push_back(i);
    return restrict_to(a, c, keep);
}

PrunedGraph subsample_communities(const AdjacencyMatrix& a, const LabelVector& c, double p,
                                  Rng& rng) {
    if (!(p > 0.0 && p <= 1.0)) throw ParameterError("subsampling probability must lie in (0, 1]");
    if (c.size() != a.n()) throw ParameterError("label vector length differs from node count");
    std::bernoulli_distribution keep_node(p);
    std::vector<int> kept;
    for (int i = 0; i < a.n(); ++i)
        if (keep_node(rng)) kept.push_back(i);
    PrunedGraph sampled = restrict_to(a, c, kept);
    PrunedGraph pruned = prune_isolated(sampled.adjacency, sampled.labels);
    // Compose the two maps so `old` refers to the original graph.
    for (auto& [old_idx, new_idx] : pruned.index_map)
        old_idx = kept[static_cast<std::size_t>(old_idx - 1)] + 1;
    return pruned;
}

std::uint64_t mix_seed(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace pabm
