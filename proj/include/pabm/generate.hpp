#pragma once

#include "pabm/graph.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <variant>

namespace pabm {

/// n x K popularity parameters, entries in [0, 1].
struct PopularityMatrix {
    Eigen::MatrixXd lambda;
};

/// n x n edge probabilities theta_ij = lambda_{i,c(j)} * lambda_{j,c(i)}.
struct EdgeProbMatrix {
    Eigen::MatrixXd theta;
};

enum class SizeMode { balanced, imbalanced };

/// Intra-community entries ~ Beta(a_intra, b_intra), inter ~ Beta(a_inter, b_inter).
struct BetaPair {
    double a_intra = 2, b_intra = 1, a_inter = 1, b_inter = 2;
};
/// Intra ~ Beta(x, 3 - x), inter ~ Beta(3 - x, x); x in (0, 3).
struct AssortDial {
    double x = 2;
};
/// Every block vector: first ceil(m/2) members ~ Beta(x, 2), the rest ~ Beta(1, 1).
struct HeteroHalves {
    double x = 4;
};
using PopularityMode = std::variant<BetaPair, AssortDial, HeteroHalves>;

/// Accepts "beta_pair(a,b,c,d)", "assort_dial(x)", "hetero_halves(x)".
PopularityMode parse_popularity_mode(const std::string& text);
std::string to_string(const PopularityMode& mode);
SizeMode parse_size_mode(const std::string& text);
std::string to_string(SizeMode mode);

struct ScenarioConfig {
    int n = 0;
    int k = 2;
    SizeMode size_mode = SizeMode::balanced;
    PopularityMode popularity = BetaPair{};
    /// Global sparsity scale multiplying Lambda.
    double rho = 1.0;
    std::uint64_t seed = 0;

    void validate() const;
};

class KeyValueConfig;
/// Required keys: n, k, seed. Optional: size_mode, popularity, rho.
ScenarioConfig scenario_from_config(const KeyValueConfig& cfg);

struct GeneratedNetwork {
    AdjacencyMatrix adjacency;
    LabelVector labels;
    PopularityMatrix popularity;
    EdgeProbMatrix theta;
};

/// Multinomial weights pi_k for the size mode.
Eigen::VectorXd community_weights(int k, SizeMode mode);

EdgeProbMatrix build_theta(const PopularityMatrix& lambda, const LabelVector& c);
AdjacencyMatrix sample_adjacency(const EdgeProbMatrix& theta, Rng& rng);
/// i.i.d. multinomial labels; the whole vector is redrawn while any community is empty.
LabelVector gen_labels(int n, int k, SizeMode mode, Rng& rng);
PopularityMatrix gen_popularity(const LabelVector& c, const PopularityMode& mode, Rng& rng);
/// gen_labels -> gen_popularity -> (scale by rho) -> build_theta -> sample_adjacency.
GeneratedNetwork generate(const ScenarioConfig& config);

/// Beta(a, b) via two gamma draws.
double sample_beta(double a, double b, Rng& rng);

}  // namespace pabm
