#include "commands.hpp"

#include "pabm/bench.hpp"
#include "pabm/config.hpp"
#include "pabm/generate.hpp"
#include "pabm/io.hpp"
#include "pabm/loss.hpp"
#include "pabm/refine.hpp"
#include "pabm/svcp.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

namespace fs = std::filesystem;

namespace pabm::cli {

namespace {

struct GenerateArgs {
    std::string config;
    std::string out;
    bool theta = false;
};

struct DetectArgs {
    std::string edges;
    int n = 0;
    int k = 2;
    std::string method = "r-tcsc-2";
    std::uint64_t seed = 0;
    std::string out;
    std::string truth;
    std::optional<double> threshold;
    bool loo = false;
    int restarts = 20;
    std::string scores;
    std::string histogram;
};

struct SelectArgs {
    std::string edges;
    int n = 0;
    int k_max = 8;
    int window = 2;
    std::uint64_t seed = 0;
    std::string out;
    int restarts = 20;
};

struct EvalArgs {
    std::string truth;
    std::string labels;
};

struct BenchArgs {
    std::string config;
    std::string out;
    std::optional<int> reps;
    std::optional<std::uint64_t> seed;
};

struct SubsampleArgs {
    std::string edges;
    int n = 0;
    std::string truth;
    double p = 1.0;
    std::uint64_t seed = 0;
    std::string out;
};

std::ofstream open_out(const fs::path& p) {
    std::ofstream out(p);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    return out;
}

int cmd_generate(const GenerateArgs& a) {
    const ScenarioConfig sc = scenario_from_config(KeyValueConfig::load(a.config));
    const GeneratedNetwork g = generate(sc);
    fs::create_directories(a.out);
    save_edge_list(fs::path(a.out) / "edges.txt", g.adjacency);
    save_labels(fs::path(a.out) / "labels.txt", g.labels);
    save_matrix_csv(fs::path(a.out) / "lambda.csv", g.popularity.lambda);
    if (a.theta) save_matrix_csv(fs::path(a.out) / "theta.csv", g.theta.theta);
    std::cout << "n=" << sc.n << " k=" << sc.k << " edges=" << g.adjacency.edge_count() << '\n';
    return 0;
}

int cmd_detect(const DetectArgs& a) {
    const AdjacencyMatrix adj = load_edge_list(a.edges, a.n);
    const Method method = parse_method(a.method);
    if (method == Method::svcp) throw CLI::ValidationError("--method", "svcp is not a clustering method");
    TcscOptions opts;
    opts.threshold = a.threshold;
    opts.kmeans.seed = a.seed;
    opts.kmeans.restarts = a.restarts;

    const Spectrum spec = spectrum(adj.matrix());
    const int steps = method == Method::tcsc ? 0 : method == Method::r_tcsc_1 ? 1 : 2;
    LabelVector labels;
    double used_threshold = 0;
    try {
        TcscResult init = tcsc_detailed(spec, a.k, opts);
        used_threshold = init.threshold;
        labels = std::move(init.labels);
        for (int t = 1; t <= steps; ++t) {
            if (t == steps && !a.scores.empty()) {
                const ScoreMatrix sm = refine_scores(adj.matrix(), labels, a.loo);
                const LabelVector next = argmax_labels(sm, labels);
                auto out = open_out(a.scores);
                write_scores_csv(out, sm, a.truth.empty() ? labels : load_labels(a.truth, a.k), next);
            }
            labels = refine_step(adj.matrix(), labels, a.loo);
        }
    } catch (const ClusterCollapse& e) {
        std::cerr << "error: cluster collapse: " << e.what() << '\n';
        if (!a.out.empty()) save_labels(a.out, e.last_valid());
        return 3;
    }
    if (!a.histogram.empty()) {
        auto out = open_out(a.histogram);
        write_histogram_csv(out, similarity_histogram(cosine_similarity(embed(spec, a.k))));
    }
    if (a.out.empty())
        write_labels(std::cout, labels);
    else
        save_labels(a.out, labels);
    std::cerr << "threshold=" << used_threshold << '\n';
    if (!a.truth.empty()) {
        const LabelVector truth = load_labels(a.truth, a.k);
        std::cerr << "loss=" << misclustering_loss(truth, labels).loss << '\n';
    }
    return 0;
}

int cmd_select_k(const SelectArgs& a) {
    const AdjacencyMatrix adj = load_edge_list(a.edges, a.n);
    SvcpConfig cfg;
    cfg.k_max = a.k_max;
    cfg.window_d = a.window;
    cfg.tcsc.kmeans.seed = a.seed;
    cfg.tcsc.kmeans.restarts = a.restarts;
    const SvcpTrace trace = select_k(adj.matrix(), cfg);
    if (!a.out.empty()) {
        auto out = open_out(a.out);
        write_trace_csv(out, trace);
    }
    std::cout << trace.chosen_k << '\n';
    return 0;
}

int cmd_eval(const EvalArgs& a) {
    const LabelVector truth = load_labels(a.truth);
    const LabelVector est = load_labels(a.labels);
    const int k = std::max(truth.k(), est.k());
    const LossReport r = misclustering_loss(LabelVector(std::vector<int>(truth.values().begin(), truth.values().end()), k),
                                            LabelVector(std::vector<int>(est.values().begin(), est.values().end()), k));
    std::cout << "loss=" << r.loss << "\naccuracy=" << 1.0 - r.loss
              << "\nmisclustered=" << r.misclustered.size() << '\n';
    return 0;
}

int cmd_bench(const BenchArgs& a) {
    ExperimentManifest m = manifest_from_config(KeyValueConfig::load(a.config));
    if (a.reps) m.replications = *a.reps;
    if (a.seed) m.master_seed = *a.seed;
    if (!a.out.empty()) m.output = a.out;
    m.validate();
    const auto rows = run_bench(m);
    const auto summary = summarize(m, rows);
    if (m.output.empty()) {
        write_results_csv(std::cout, m, rows, summary);
    } else {
        auto out = open_out(m.output);
        write_results_csv(out, m, rows, summary);
    }
    return 0;
}

int cmd_subsample(const SubsampleArgs& a) {
    const AdjacencyMatrix adj = load_edge_list(a.edges, a.n);
    const LabelVector truth = load_labels(a.truth);
    Rng rng(a.seed);
    const PrunedGraph g = subsample_communities(adj, truth, a.p, rng);
    fs::create_directories(a.out);
    save_edge_list(fs::path(a.out) / "edges.txt", g.adjacency);
    save_labels(fs::path(a.out) / "labels.txt", g.labels);
    save_index_map(fs::path(a.out) / "index_map.csv", g.index_map);
    std::cout << "n=" << g.adjacency.n() << '\n';
    return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"Community detection under the popularity adjusted block model"};
    app.require_subcommand(1);
    const std::vector<std::string> methods{"tcsc", "r-tcsc-1", "r-tcsc-2"};

    GenerateArgs ga;
    auto* gen = app.add_subcommand("generate", "Sample a network from a scenario config");
    gen->add_option("--config", ga.config, "key=value scenario file")->required()->check(CLI::ExistingFile);
    gen->add_option("--out", ga.out, "output directory")->required();
    gen->add_flag("--theta", ga.theta, "also write theta.csv");

    DetectArgs da;
    auto* det = app.add_subcommand("detect", "Estimate community labels");
    det->add_option("--edges", da.edges, "edge list (1-based)")->required()->check(CLI::ExistingFile);
    det->add_option("--n", da.n, "node count")->required()->check(CLI::PositiveNumber);
    det->add_option("--k", da.k, "number of communities")->required()->check(CLI::PositiveNumber);
    det->add_option("--method", da.method, "tcsc | r-tcsc-1 | r-tcsc-2")->check(CLI::IsMember(methods))->capture_default_str();
    det->add_option("--seed", da.seed, "k-means seed")->capture_default_str();
    det->add_option("--out", da.out, "labels output file (stdout if absent)");
    det->add_option("--truth", da.truth, "true labels; prints the loss to stderr")->check(CLI::ExistingFile);
    det->add_option("--threshold", da.threshold, "fixed cosine threshold in (0,1)");
    det->add_flag("--loo", da.loo, "leave-one-out refinement");
    det->add_option("--restarts", da.restarts, "k-means restarts")->capture_default_str();
    det->add_option("--scores", da.scores, "CSV of the last refinement's scores");
    det->add_option("--histogram", da.histogram, "CSV of the similarity histogram");

    SelectArgs sa;
    auto* sel = app.add_subcommand("select-k", "Estimate the number of communities");
    sel->add_option("--edges", sa.edges, "edge list (1-based)")->required()->check(CLI::ExistingFile);
    sel->add_option("--n", sa.n, "node count")->required()->check(CLI::PositiveNumber);
    sel->add_option("--k-max", sa.k_max, "largest candidate")->capture_default_str();
    sel->add_option("--window", sa.window, "averaging window width")->capture_default_str();
    sel->add_option("--seed", sa.seed, "k-means seed")->capture_default_str();
    sel->add_option("--restarts", sa.restarts, "k-means restarts")->capture_default_str();
    sel->add_option("--out", sa.out, "trace CSV");

    EvalArgs ea;
    auto* ev = app.add_subcommand("eval", "Misclustering loss of an estimate");
    ev->add_option("--truth", ea.truth, "true labels")->required()->check(CLI::ExistingFile);
    ev->add_option("--labels,estimate", ea.labels, "estimated labels")->required()->check(CLI::ExistingFile);

    BenchArgs ba;
    auto* be = app.add_subcommand("bench", "Run a Monte Carlo experiment grid");
    be->add_option("--config", ba.config, "experiment manifest")->required()->check(CLI::ExistingFile);
    be->add_option("--out", ba.out, "results CSV (overrides the manifest)");
    be->add_option("--reps", ba.reps, "replications (overrides the manifest)")->check(CLI::PositiveNumber);
    be->add_option("--seed", ba.seed, "master seed (overrides the manifest)");

    SubsampleArgs ua;
    auto* sub = app.add_subcommand("subsample", "Bernoulli node subsample followed by isolated-node pruning");
    sub->add_option("--edges", ua.edges, "edge list (1-based)")->required()->check(CLI::ExistingFile);
    sub->add_option("--n", ua.n, "node count")->required()->check(CLI::PositiveNumber);
    sub->add_option("--truth", ua.truth, "labels of the full network")->required()->check(CLI::ExistingFile);
    sub->add_option("--p", ua.p, "keep probability in (0,1]")->required();
    sub->add_option("--seed", ua.seed, "sampling seed")->capture_default_str();
    sub->add_option("--out", ua.out, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    try {
        if (*gen) return cmd_generate(ga);
        if (*det) return cmd_detect(da);
        if (*sel) return cmd_select_k(sa);
        if (*ev) return cmd_eval(ea);
        if (*be) return cmd_bench(ba);
        if (*sub) return cmd_subsample(ua);
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

}  // namespace pabm::cli
