#include "pabm/tcsc.hpp"

#include "pabm/error.hpp"

namespace pabm {

TcscResult tcsc_detailed(const Spectrum& s, int k, const TcscOptions& opts) {
    const auto n = static_cast<int>(s.values.size());
    if (k < 1) throw ParameterError("TCSC needs k >= 1");
    if (static_cast<long long>(k) * k > n) throw ParameterError("TCSC needs n >= k^2");
    TcscResult out;
    if (k == 1) {
        out.labels = LabelVector::constant(n, 1);
        return out;
    }
    const SimilarityMatrix sim = cosine_similarity(embed(s, k));
    ThresholdChoice choice;
    if (opts.threshold) {
        choice.value = *opts.threshold;
    } else {
        choice = auto_threshold(sim);
    }
    const ThresholdedMatrix t = threshold(sim, choice.value);
    ClusterResult km = kmeans(t.t, k, opts.kmeans);
    out.labels = std::move(km.labels);
    out.threshold = choice.value;
    out.threshold_fallback = choice.fallback;
    out.objective = km.objective;
    return out;
}

LabelVector tcsc(const Eigen::MatrixXd& m, int k, const TcscOptions& opts) {
    if (k < 1) throw ParameterError("TCSC needs k >= 1");
    if (static_cast<long long>(k) * k > m.rows()) throw ParameterError("TCSC needs n >= k^2");
    return tcsc_detailed(spectrum(m), k, opts).labels;
}

LabelVector tcsc(const AdjacencyMatrix& a, int k, const TcscOptions& opts) {
    return tcsc(a.matrix(), k, opts);
}

}  // namespace pabm
