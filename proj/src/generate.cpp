#include "pabm/generate.hpp"

#include "pabm/config.hpp"
#include "pabm/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pabm {

namespace {

void check_beta(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
        throw ParameterError("Beta parameters must be positive and finite");
}

std::vector<double> parse_args(const std::string& text, const std::string& name, std::size_t count) {
    const auto open = text.find('(');
    const auto close = text.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open ||
        !trim(text.substr(close + 1)).empty())
        throw ParseError("popularity mode '" + text + "': expected " + name + "(...)");
    std::vector<double> args;
    for (const auto& item : split_list(text.substr(open + 1, close - open - 1), ','))
        args.push_back(parse_double(item, name));
    if (args.size() != count)
        throw ParseError(name + " takes " + std::to_string(count) + " arguments");
    return args;
}

}  // namespace

PopularityMode parse_popularity_mode(const std::string& text) {
    const auto t = trim(text);
    const auto name = trim(t.substr(0, t.find('(')));
    if (name == "beta_pair") {
        auto a = parse_args(t, name, 4);
        return BetaPair{a[0], a[1], a[2], a[3]};
    }
    if (name == "assort_dial") return AssortDial{parse_args(t, name, 1)[0]};
    if (name == "hetero_halves") return HeteroHalves{parse_args(t, name, 1)[0]};
    throw ParseError("unknown popularity mode '" + text + "'");
}

std::string to_string(const PopularityMode& mode) {
    std::ostringstream os;
    if (auto* b = std::get_if<BetaPair>(&mode))
        os << "beta_pair(" << b->a_intra << ',' << b->b_intra << ',' << b->a_inter << ','
           << b->b_inter << ')';
    else if (auto* d = std::get_if<AssortDial>(&mode))
        os << "assort_dial(" << d->x << ')';
    else
        os << "hetero_halves(" << std::get<HeteroHalves>(mode).x << ')';
    return os.str();
}

SizeMode parse_size_mode(const std::string& text) {
    const auto t = trim(text);
    if (t == "balanced") return SizeMode::balanced;
    if (t == "imbalanced") return SizeMode::imbalanced;
    throw ParseError("unknown size_mode '" + text + "'");
}

std::string to_string(SizeMode mode) {
    return mode == SizeMode::balanced ? "balanced" : "imbalanced";
}

void ScenarioConfig::validate() const {
    if (k < 2) throw ParameterError("scenario needs k >= 2");
    if (n < k) throw ParameterError("scenario needs n >= k");
    if (!(rho > 0.0 && rho <= 1.0)) throw ParameterError("rho must lie in (0, 1]");
    std::visit(
        [](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, BetaPair>) {
                check_beta(m.a_intra, m.b_intra);
                check_beta(m.a_inter, m.b_inter);
            } else if constexpr (std::is_same_v<T, AssortDial>) {
                if (!(m.x > 0.0 && m.x < 3.0)) throw ParameterError("assortativity dial must lie in (0, 3)");
            } else {
                check_beta(m.x, 2.0);
            }
        },
        popularity);
}

ScenarioConfig scenario_from_config(const KeyValueConfig& cfg) {
    ScenarioConfig s;
    s.n = static_cast<int>(cfg.require_int("n"));
    s.k = static_cast<int>(cfg.require_int("k"));
    s.seed = static_cast<std::uint64_t>(cfg.require_int("seed"));
    s.size_mode = parse_size_mode(cfg.get("size_mode", "balanced"));
    s.popularity = parse_popularity_mode(cfg.get("popularity", "beta_pair(2,1,1,2)"));
    s.rho = cfg.get_double("rho", 1.0);
    s.validate();
    return s;
}

Eigen::VectorXd community_weights(int k, SizeMode mode) {
    if (k < 1) throw ParameterError("k must be positive");
    Eigen::VectorXd w(k);
    for (int j = 0; j < k; ++j) w[j] = mode == SizeMode::balanced ? 1.0 : 1.0 / (j + 1);
    return w / w.sum();
}

double sample_beta(double a, double b, Rng& rng) {
    check_beta(a, b);
    std::gamma_distribution<double> ga(a, 1.0), gb(b, 1.0);
    const double x = ga(rng);
    const double y = gb(rng);
    if (x + y == 0.0) return a / (a + b);  // both draws underflowed
    return x / (x + y);
}

EdgeProbMatrix build_theta(const PopularityMatrix& lambda, const LabelVector& c) {
    const auto& lam = lambda.lambda;
    if (lam.rows() != c.size()) throw ParameterError("Lambda rows differ from label vector length");
    if (lam.cols() != c.k()) throw ParameterError("Lambda columns differ from community count");
    const int n = c.size();
    EdgeProbMatrix out{Eigen::MatrixXd(n, n)};
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) out.theta(i, j) = lam(i, c[j]) * lam(j, c[i]);
    return out;
}

AdjacencyMatrix sample_adjacency(const EdgeProbMatrix& theta, Rng& rng) {
    const auto& t = theta.theta;
    if (t.rows() != t.cols()) throw ParameterError("edge probability matrix must be square");
    if ((t.array() < 0.0).any() || (t.array() > 1.0).any() || !t.allFinite())
        throw ParameterError("edge probabilities must lie in [0, 1]");
    const auto n = t.rows();
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            if (u(rng) < t(i, j)) {
                a(i, j) = 1.0;
                a(j, i) = 1.0;
            }
        }
    }
    return AdjacencyMatrix(std::move(a));
}

LabelVector gen_labels(int n, int k, SizeMode mode, Rng& rng) {
    if (k < 1 || n < k) throw ParameterError("gen_labels needs n >= k >= 1");
    const Eigen::VectorXd w = community_weights(k, mode);
    std::discrete_distribution<int> pick(w.data(), w.data() + w.size());
    std::vector<int> labels(static_cast<std::size_t>(n));
    while (true) {
        std::vector<int> counts(static_cast<std::size_t>(k), 0);
        for (int& x : labels) {
            x = pick(rng);
            ++counts[static_cast<std::size_t>(x)];
        }
        if (std::find(counts.begin(), counts.end(), 0) == counts.end()) break;
    }
    return LabelVector(std::move(labels), k);
}

PopularityMatrix gen_popularity(const LabelVector& c, const PopularityMode& mode, Rng& rng) {
    const int n = c.size();
    const int k = c.k();
    const auto sizes = community_sizes(c);
    // rank of each node inside its community, for the hetero split
    std::vector<int> rank(static_cast<std::size_t>(n));
    {
        std::vector<int> seen(static_cast<std::size_t>(k), 0);
        for (int i = 0; i < n; ++i) rank[static_cast<std::size_t>(i)] = seen[static_cast<std::size_t>(c[i])]++;
    }
    PopularityMatrix out{Eigen::MatrixXd(n, k)};
    for (int i = 0; i < n; ++i) {
        for (int l = 0; l < k; ++l) {
            const bool intra = c[i] == l;
            double a = 1, b = 1;
            if (auto* bp = std::get_if<BetaPair>(&mode)) {
                a = intra ? bp->a_intra : bp->a_inter;
                b = intra ? bp->b_intra : bp->b_inter;
            } else if (auto* dial = std::get_if<AssortDial>(&mode)) {
                if (!(dial->x > 0.0 && dial->x < 3.0))
                    throw ParameterError("assortativity dial must lie in (0, 3)");
                a = intra ? dial->x : 3.0 - dial->x;
                b = intra ? 3.0 - dial->x : dial->x;
            } else {
                const int m = sizes[static_cast<std::size_t>(c[i])];
                const bool first_half = rank[static_cast<std::size_t>(i)] < (m + 1) / 2;
                a = first_half ? std::get<HeteroHalves>(mode).x : 1.0;
                b = first_half ? 2.0 : 1.0;
            }
            out.lambda(i, l) = sample_beta(a, b, rng);
        }
    }
    return out;
}

GeneratedNetwork generate(const ScenarioConfig& config) {
    config.validate();
    Rng rng(config.seed);
    GeneratedNetwork g;
    g.labels = gen_labels(config.n, config.k, config.size_mode, rng);
    g.popularity = gen_popularity(g.labels, config.popularity, rng);
    g.popularity.lambda *= config.rho;
    g.theta = build_theta(g.popularity, g.labels);
    g.adjacency = sample_adjacency(g.theta, rng);
    return g;
}

}  // namespace pabm
