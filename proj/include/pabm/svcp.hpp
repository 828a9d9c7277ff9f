#pragma once

#include "pabm/graph.hpp"
#include "pabm/tcsc.hpp"

#include <Eigen/Dense>

#include <iosfwd>
#include <vector>

namespace pabm {

struct SvcpConfig {
    int k_max = 8;
    /// Width of the averaging window in the ratio denominator.
    int window_d = 2;
    TcscOptions tcsc;

    void validate() const;
};

struct SvcpTrace {
    /// f_values[j] = f(c_{j+1}, A) for candidates 1..k_max + window_d - 1;
    /// NaN where the candidate was skipped (n < k^2).
    std::vector<double> f_values;
    /// ratios[j] is the objective for K = j + 2, j = 0..k_max - 2.
    std::vector<double> ratios;
    int chosen_k = 0;
    double log_n = 0.0;

    double f(int k) const { return f_values[static_cast<std::size_t>(k - 1)]; }
};

/// max_k sigma_2 of the diagonal blocks a[c == k, c == k]. Singleton blocks
/// contribute 0; an empty community is a ParameterError.
double block_second_singular(const Eigen::MatrixXd& a, const LabelVector& c);

/// Singular-value change point estimate of the number of communities. Accepts
/// any symmetric nonnegative matrix.
SvcpTrace select_k(const Eigen::MatrixXd& a, const SvcpConfig& cfg);
SvcpTrace select_k(const Spectrum& s, const Eigen::MatrixXd& a, const SvcpConfig& cfg);

/// Columns: k, f_value, ratio (ratio empty for k = 1 and beyond k_max).
void write_trace_csv(std::ostream& out, const SvcpTrace& trace);

}  // namespace pabm
