#pragma once

// Serial, definition-level versions of the parallel kernels. Slow; used by the
// tests as cross-checks and by the benchmark as the baseline.

#include "pabm/kmeans.hpp"
#include "pabm/refine.hpp"
#include "pabm/spectral.hpp"

namespace pabm::reference {

/// Pairwise |cos| with norms taken per pair.
SimilarityMatrix cosine_similarity(const Embedding& e);

/// Builds every slice vector explicitly (including the leave-one-out mean)
/// and evaluates the cosine sum term by term.
ScoreMatrix refine_scores(const Eigen::MatrixXd& a, const LabelVector& c, bool leave_one_out);

/// Restarts run one after another.
ClusterResult kmeans(const Eigen::MatrixXd& rows, int k, const KMeansConfig& cfg);

}  // namespace pabm::reference
