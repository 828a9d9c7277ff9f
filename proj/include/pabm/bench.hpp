#pragma once

#include "pabm/generate.hpp"
#include "pabm/kmeans.hpp"
#include "pabm/refine.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace pabm {

enum class Method { tcsc, r_tcsc_1, r_tcsc_2, svcp };

/// "tcsc", "r-tcsc-1", "r-tcsc-2", "svcp".
Method parse_method(const std::string& text);
std::string to_string(Method m);

struct ExperimentManifest {
    /// Cartesian product of the grid, in n-major order; per-scenario seeds unused.
    std::vector<ScenarioConfig> scenarios;
    std::vector<Method> methods;
    int replications = 20;
    std::uint64_t master_seed = 0;
    std::string output;
    /// Candidate ceiling for the svcp method.
    int k_max = 8;
    KMeansConfig kmeans;
    bool leave_one_out = false;

    void validate() const;
};

class KeyValueConfig;

/// Keys: n, k, size_mode (comma lists), popularity (';' list), methods (comma
/// list), replications, master_seed, output, k_max, rho, restarts, leave_one_out.
ExperimentManifest manifest_from_config(const KeyValueConfig& cfg);

/// One (scenario, method, replication) outcome. For svcp, loss is 1 when the
/// selected K differs from the truth and 0 otherwise.
struct ResultRow {
    int scenario = 0;
    Method method = Method::tcsc;
    int replication = 0;
    std::uint64_t seed = 0;
    double loss = 0.0;
    double runtime_ms = 0.0;
    int chosen_k = 0;
};

struct SummaryRow {
    int scenario = 0;
    Method method = Method::tcsc;
    int count = 0;
    double mean_loss = 0.0;
    double sd_loss = 0.0;
    double mean_runtime_ms = 0.0;
};

/// Network seed for a replication. Every method in a replication sees the same
/// network and the same k-means stream, so the refined stages extend the TCSC run.
std::uint64_t replication_seed(std::uint64_t master, int scenario, int replication);

/// Runs the grid with replications spread over OpenMP threads; rows come back
/// in (scenario, method, replication) order whatever the completion order.
std::vector<ResultRow> run_bench(const ExperimentManifest& m);

/// Mean and sample sd per (scenario, method) over rows with finite loss.
std::vector<SummaryRow> summarize(const ExperimentManifest& m, const std::vector<ResultRow>& rows);

inline constexpr const char* kResultsSchema = "# pabm-bench results v1";

/// kind,scenario,n,k,size_mode,popularity,method,replication,seed,loss,loss_sd,count,chosen_k,runtime_ms
void write_results_csv(std::ostream& out, const ExperimentManifest& m,
                       const std::vector<ResultRow>& rows, const std::vector<SummaryRow>& summary);

}  // namespace pabm
