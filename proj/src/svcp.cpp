#include "pabm/svcp.hpp"

#include "pabm/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <limits>
#include <string>

namespace pabm {

void SvcpConfig::validate() const {
    if (k_max < 2) throw ParameterError("k_max must be >= 2");
    if (window_d < 1) throw ParameterError("window_d must be >= 1");
    tcsc.kmeans.validate();
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double second_singular_value(const Eigen::MatrixXd& block) {
    if (block.rows() < 2) return 0.0;
    if ((block - block.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, block.cwiseAbs().maxCoeff())) {
        // symmetric: singular values are |eigenvalues|
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(block, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success) throw NumericalError("eigenvalue solver did not converge");
        Eigen::VectorXd sv = es.eigenvalues().cwiseAbs();
        std::sort(sv.data(), sv.data() + sv.size(), std::greater<>());
        return sv[1];
    }
    Eigen::BDCSVD<Eigen::MatrixXd> svd(block);
    return svd.singularValues()[1];
}

// Drops empty communities, keeping the relative order of the rest.
LabelVector compact(const LabelVector& c) {
    const auto sizes = community_sizes(c);
    std::vector<int> remap(sizes.size(), -1);
    int next = 0;
    for (std::size_t k = 0; k < sizes.size(); ++k)
        if (sizes[k] > 0) remap[k] = next++;
    std::vector<int> v;
    v.reserve(static_cast<std::size_t>(c.size()));
    for (int x : c.values()) v.push_back(remap[static_cast<std::size_t>(x)]);
    return LabelVector(std::move(v), std::max(next, 1));
}

}  // namespace

double block_second_singular(const Eigen::MatrixXd& a, const LabelVector& c) {
    if (a.rows() != a.cols()) throw ParameterError("matrix must be square");
    if (a.rows() != c.size()) throw ParameterError("label vector length differs from matrix size");
    double f = 0.0;
    for (const auto& members : community_members(c)) {
        if (members.empty()) throw ParameterError("empty community in block_second_singular");
        const auto m = static_cast<Eigen::Index>(members.size());
        Eigen::MatrixXd block(m, m);
        for (Eigen::Index q = 0; q < m; ++q)
            for (Eigen::Index p = 0; p < m; ++p)
                block(p, q) = a(members[static_cast<std::size_t>(p)], members[static_cast<std::size_t>(q)]);
        f = std::max(f, second_singular_value(block));
    }
    return f;
}

SvcpTrace select_k(const Spectrum& s, const Eigen::MatrixXd& a, const SvcpConfig& cfg) {
    cfg.validate();
    const auto n = static_cast<int>(a.rows());
    if (n < 2) throw ParameterError("select_k needs at least two nodes");
    const int last = cfg.k_max + cfg.window_d - 1;

    SvcpTrace trace;
    trace.log_n = std::log(static_cast<double>(n));
    trace.f_values.assign(static_cast<std::size_t>(last), kNaN);
    trace.f_values[0] = block_second_singular(a, LabelVector::constant(n, 1));

#pragma omp parallel for schedule(dynamic, 1)
    for (int kt = 2; kt <= last; ++kt) {
        if (static_cast<long long>(kt) * kt > n) continue;
        TcscOptions opts = cfg.tcsc;
        opts.kmeans.seed = derive_seed(cfg.tcsc.kmeans.seed, kt);
        const LabelVector labels = tcsc_detailed(s, kt, opts).labels;
        trace.f_values[static_cast<std::size_t>(kt - 1)] = block_second_singular(a, compact(labels));
    }
    for (int kt = 2; kt <= last; ++kt) {
        if (static_cast<long long>(kt) * kt > n)
            std::cerr << "warning: skipping K = " << kt << " (needs n >= K^2, n = " << n << ")\n";
    }

    trace.ratios.assign(static_cast<std::size_t>(cfg.k_max - 1), kNaN);
    double best = -std::numeric_limits<double>::infinity();
    for (int kt = 2; kt <= cfg.k_max; ++kt) {
        const double num = trace.f(kt - 1);
        if (std::isnan(num) || std::isnan(trace.f(kt))) continue;
        // Window mean over the candidates that exist.
        double sum = 0.0;
        int count = 0;
        for (int w = kt; w < kt + cfg.window_d; ++w) {
            if (!std::isnan(trace.f(w))) {
                sum += trace.f(w);
                ++count;
            }
        }
        const double ratio = num / (sum / count + trace.log_n);
        trace.ratios[static_cast<std::size_t>(kt - 2)] = ratio;
        if (ratio > best) {
            best = ratio;
            trace.chosen_k = kt;
        }
    }
    if (trace.chosen_k == 0) throw ParameterError("select_k: every candidate was skipped");
    return trace;
}

SvcpTrace select_k(const Eigen::MatrixXd& a, const SvcpConfig& cfg) {
    return select_k(spectrum(a), a, cfg);
}

void write_trace_csv(std::ostream& out, const SvcpTrace& trace) {
    out << "k,f_value,ratio\n" << std::setprecision(17);
    for (std::size_t j = 0; j < trace.f_values.size(); ++j) {
        const int kt = static_cast<int>(j) + 1;
        out << kt << ',';
        if (!std::isnan(trace.f_values[j])) out << trace.f_values[j];
        out << ',';
        if (kt >= 2 && static_cast<std::size_t>(kt - 2) < trace.ratios.size() &&
            !std::isnan(trace.ratios[static_cast<std::size_t>(kt - 2)]))
            out << trace.ratios[static_cast<std::size_t>(kt - 2)];
        out << '\n';
    }
}

}  // namespace pabm
