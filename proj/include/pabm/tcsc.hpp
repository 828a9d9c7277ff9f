#pragma once

#include "pabm/graph.hpp"
#include "pabm/kmeans.hpp"
#include "pabm/spectral.hpp"

#include <optional>

namespace pabm {

struct TcscOptions {
    /// Cosine threshold in (0, 1); chosen from the similarity histogram when unset.
    std::optional<double> threshold;
    KMeansConfig kmeans;
};

struct TcscResult {
    LabelVector labels;
    double threshold = 0.0;
    bool threshold_fallback = false;
    double objective = 0.0;
};

/// Thresholded cosine spectral clustering: embed -> |cos| -> threshold -> k-means.
/// Needs n >= k^2. k = 1 returns the constant labeling.
TcscResult tcsc_detailed(const Spectrum& s, int k, const TcscOptions& opts = {});
LabelVector tcsc(const Eigen::MatrixXd& m, int k, const TcscOptions& opts = {});
LabelVector tcsc(const AdjacencyMatrix& a, int k, const TcscOptions& opts = {});

}  // namespace pabm
