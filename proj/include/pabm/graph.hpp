#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace pabm {

using Rng = std::mt19937_64;

/// Community assignment. Stored 0-based; the file format and `one_based()` are 1-based.
class LabelVector {
public:
    LabelVector() = default;
    /// Throws ParameterError if k < 1 or any label is outside [0, k).
    LabelVector(std::vector<int> zero_based, int k);

    static LabelVector from_one_based(std::span<const int> labels, int k);
    /// All nodes in one community.
    static LabelVector constant(int n, int k = 1);

    int size() const noexcept { return static_cast<int>(labels_.size()); }
    int k() const noexcept { return k_; }
    int operator[](int i) const { return labels_[static_cast<std::size_t>(i)]; }
    std::span<const int> values() const noexcept { return labels_; }
    std::vector<int> one_based() const;

    bool operator==(const LabelVector&) const = default;

private:
    std::vector<int> labels_;
    int k_ = 0;
};

/// "K=k: l1 l2 ..." with 1-based labels.
std::ostream& operator<<(std::ostream& out, const LabelVector& c);

/// n_k(c) for k = 0..K-1.
std::vector<int> community_sizes(const LabelVector& c);

/// Indices of the nodes in each community, in increasing node order.
std::vector<std::vector<int>> community_members(const LabelVector& c);

/// Symmetric 0/1 matrix with zero diagonal. Dense storage.
class AdjacencyMatrix {
public:
    AdjacencyMatrix() = default;
    explicit AdjacencyMatrix(int n);
    /// Validates the binary/symmetric/zero-diagonal invariants.
    explicit AdjacencyMatrix(Eigen::MatrixXd entries);

    /// Builds from 0-based undirected edges; self-loops dropped, duplicates collapse.
    static AdjacencyMatrix from_edges(int n, std::span<const std::pair<int, int>> edges);

    int n() const noexcept { return static_cast<int>(m_.rows()); }
    const Eigen::MatrixXd& matrix() const noexcept { return m_; }
    bool has_edge(int i, int j) const { return m_(i, j) != 0.0; }
    int degree(int i) const;
    std::int64_t edge_count() const;
    /// 0-based (i, j) pairs with i < j, row-major order.
    std::vector<std::pair<int, int>> edges() const;

    AdjacencyMatrix induced(std::span<const int> nodes) const;

    bool operator==(const AdjacencyMatrix& o) const { return m_ == o.m_; }

private:
    Eigen::MatrixXd m_;
};

struct PrunedGraph {
    AdjacencyMatrix adjacency;
    LabelVector labels;
    /// 1-based (old, new) pairs for the surviving nodes.
    std::vector<std::pair<int, int>> index_map;
};

/// Drops every node of degree zero.
PrunedGraph prune_isolated(const AdjacencyMatrix& a, const LabelVector& c);

/// Keeps each node independently with probability p, then prunes isolated nodes.
/// The returned index map is relative to the original graph.
PrunedGraph subsample_communities(const AdjacencyMatrix& a, const LabelVector& c, double p,
                                  Rng& rng);

/// splitmix64 finalizer; used to derive independent stream seeds.
std::uint64_t mix_seed(std::uint64_t x) noexcept;

template <typename... Ts>
std::uint64_t derive_seed(std::uint64_t master, Ts... parts) noexcept {
    std::uint64_t s = mix_seed(master);
    ((s = mix_seed(s ^ (static_cast<std::uint64_t>(parts) + 0x9e3779b97f4a7c15ULL))), ...);
    return s;
}

}  // namespace pabm
