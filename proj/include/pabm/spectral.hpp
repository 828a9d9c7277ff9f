#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace pabm {

/// Full eigendecomposition ordered by descending |eigenvalue|. Ties keep the
/// solver's ascending-eigenvalue order. Each eigenvector is signed so that its
/// largest-magnitude entry is positive.
struct Spectrum {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;
};

/// Throws ParameterError for a non-square or asymmetric input, NumericalError
/// if the solver fails.
Spectrum spectrum(const Eigen::MatrixXd& m);

/// Rows xi_i of the K^2 leading eigenvectors (by |eigenvalue|).
struct Embedding {
    Eigen::MatrixXd xi;
    Eigen::VectorXd eigvals;
};

Embedding embed(const Spectrum& s, int k);
Embedding embed(const Eigen::MatrixXd& m, int k);

/// tau_ij = |cos(xi_i, xi_j)|; rows with norm below 1e-12 are all zero.
struct SimilarityMatrix {
    Eigen::MatrixXd tau;
};

inline constexpr double kZeroRowNorm = 1e-12;

/// Parallel over rows; every entry is a single dot product, so the result does
/// not depend on the schedule.
SimilarityMatrix cosine_similarity(const Embedding& e);

struct Histogram {
    double bin_width = 0.02;
    std::vector<std::int64_t> counts;
    double left_edge(int b) const { return b * bin_width; }
};

inline constexpr int kThresholdBins = 50;
inline constexpr double kMaxAutoThreshold = 0.5;

/// Fixed-width histogram over [0, 1]; 1.0 lands in the last bin.
Histogram histogram_of(std::span<const double> values, int bins = kThresholdBins);
/// Histogram of the strict upper triangle of tau.
Histogram similarity_histogram(const SimilarityMatrix& s, int bins = kThresholdBins);
void write_histogram_csv(std::ostream& out, const Histogram& h);

struct ThresholdChoice {
    double value = 0.5;
    bool fallback = false;
};

/// Steepest drop: the largest count[b] - count[b+1] scanning left to right
/// (first wins on ties); returns the left edge of bin b+1. With fewer than two
/// occupied bins there is no drop to find and 0.5 is returned with a warning.
/// Only drops whose threshold would be <= max_threshold are considered; the
/// upturn of |cos| counts near 1 otherwise tends to win with values like 0.98,
/// which throws away most within-community pairs.
ThresholdChoice steepest_drop_threshold(const Histogram& h, double max_threshold = kMaxAutoThreshold);
ThresholdChoice auto_threshold(const SimilarityMatrix& s, int bins = kThresholdBins,
                               double max_threshold = kMaxAutoThreshold);

struct ThresholdedMatrix {
    Eigen::MatrixXd t;
    double threshold = 0.5;
};

/// t_ij = 1{tau_ij >= d}; d must lie in (0, 1).
ThresholdedMatrix threshold(const SimilarityMatrix& s, double d);

}  // namespace pabm
