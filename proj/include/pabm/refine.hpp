#pragma once

#include "pabm/graph.hpp"
#include "pabm/tcsc.hpp"

#include <Eigen/Dense>

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace pabm {

/// A community emptied out (or fell below the size guard). Carries the last
/// labeling that still had every community populated.
class ClusterCollapse : public std::runtime_error {
public:
    ClusterCollapse(const std::string& what, LabelVector last_valid, int step)
        : std::runtime_error(what), last_valid_(std::move(last_valid)), step_(step) {}
    const LabelVector& last_valid() const noexcept { return last_valid_; }
    /// Refinement step that failed; 0 means the incoming labels were already degenerate.
    int step() const noexcept { return step_; }

private:
    LabelVector last_valid_;
    int step_;
};

struct RefineConfig {
    int steps = 2;
    /// Leave-one-out means in the score numerator; off selects the fast full-mean update.
    bool leave_one_out = false;
    int min_cluster_guard = 1;

    void validate() const;
};

/// Column groups and community-mean rows under a labeling c.
/// Slice A_i^{(l)} is row i restricted to `columns[l]`; the community mean
/// slice Abar^{(k,l)} is row k of `mean_rows` restricted the same way.
struct CommunitySlices {
    std::vector<std::vector<int>> columns;
    /// K x n, row k = mean of the rows of A over members of community k.
    Eigen::MatrixXd mean_rows;
    std::vector<int> sizes;

    Eigen::VectorXd row_slice(const Eigen::MatrixXd& a, int i, int l) const;
    Eigen::VectorXd mean_slice(int k, int l) const;
};

/// Throws ClusterCollapse (step 0) if any community of c is empty.
CommunitySlices community_slices(const Eigen::MatrixXd& a, const LabelVector& c);

/// n x K aggregated cosine scores S_ik = sum_l cos(A_i^{(l)}, Abar^{(k,l)}).
/// With leave_one_out the numerator uses the mean without node i while the
/// denominator keeps the full-mean norm. Zero-norm terms contribute 0.
struct ScoreMatrix {
    Eigen::MatrixXd s;
};

ScoreMatrix refine_scores(const Eigen::MatrixXd& a, const LabelVector& c, bool leave_one_out);

/// Synchronous label update argmax_k S_ik. Ties keep the current label, then
/// take the lowest k.
LabelVector argmax_labels(const ScoreMatrix& scores, const LabelVector& current);

/// One refinement step. Throws ClusterCollapse when the result has a community
/// smaller than `min_cluster_guard`.
LabelVector refine_step(const Eigen::MatrixXd& a, const LabelVector& c, bool leave_one_out,
                        int min_cluster_guard = 1);

/// stages[0] is the TCSC labeling, stages[t] the t-th refinement.
struct RefinedClustering {
    std::vector<LabelVector> stages;
    double threshold = 0.0;

    const LabelVector& labels() const { return stages.back(); }
};

RefinedClustering r_tcsc(const Spectrum& s, const Eigen::MatrixXd& a, int k,
                         const RefineConfig& cfg, const TcscOptions& opts = {});
LabelVector r_tcsc(const AdjacencyMatrix& a, int k, const RefineConfig& cfg,
                   const TcscOptions& opts = {});

/// Columns: node, S_1..S_K, truth, estimate (1-based labels).
void write_scores_csv(std::ostream& out, const ScoreMatrix& scores, const LabelVector& truth,
                      const LabelVector& estimate);

}  // namespace pabm
