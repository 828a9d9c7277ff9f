#include "pabm/bench.hpp"

#include "pabm/config.hpp"
#include "pabm/error.hpp"
#include "pabm/loss.hpp"
#include "pabm/svcp.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

namespace pabm {

Method parse_method(const std::string& text) {
    const auto t = trim(text);
    if (t == "tcsc") return Method::tcsc;
    if (t == "r-tcsc-1") return Method::r_tcsc_1;
    if (t == "r-tcsc-2") return Method::r_tcsc_2;
    if (t == "svcp") return Method::svcp;
    throw ParseError("unknown method '" + text + "' (expected tcsc, r-tcsc-1, r-tcsc-2 or svcp)");
}

std::string to_string(Method m) {
    switch (m) {
        case Method::tcsc: return "tcsc";
        case Method::r_tcsc_1: return "r-tcsc-1";
        case Method::r_tcsc_2: return "r-tcsc-2";
        case Method::svcp: return "svcp";
    }
    return "?";
}

void ExperimentManifest::validate() const {
    if (scenarios.empty()) throw ParameterError("manifest grid is empty");
    if (methods.empty()) throw ParameterError("manifest lists no methods");
    if (replications < 1) throw ParameterError("replications must be >= 1");
    if (k_max < 2) throw ParameterError("k_max must be >= 2");
    kmeans.validate();
    for (const auto& s : scenarios) s.validate();
}

namespace {

bool parse_bool(const std::string& s, const std::string& key) {
    const auto t = trim(s);
    if (t == "true" || t == "1" || t == "yes") return true;
    if (t == "false" || t == "0" || t == "no") return false;
    throw ParseError("'" + key + "': expected true or false");
}

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

ExperimentManifest manifest_from_config(const KeyValueConfig& cfg) {
    ExperimentManifest m;
    std::vector<int> ns, ks;
    for (const auto& s : split_list(cfg.require("n"), ',')) ns.push_back(static_cast<int>(parse_int(s, "n")));
    for (const auto& s : split_list(cfg.require("k"), ',')) ks.push_back(static_cast<int>(parse_int(s, "k")));
    std::vector<SizeMode> sizes;
    for (const auto& s : split_list(cfg.get("size_mode", "balanced"), ',')) sizes.push_back(parse_size_mode(s));
    std::vector<PopularityMode> pops;
    for (const auto& s : split_list(cfg.get("popularity", "beta_pair(2,1,1,2)"), ';'))
        pops.push_back(parse_popularity_mode(s));
    const double rho = cfg.get_double("rho", 1.0);
    for (int n : ns)
        for (int k : ks)
            for (SizeMode sm : sizes)
                for (const auto& p : pops) m.scenarios.push_back(ScenarioConfig{n, k, sm, p, rho, 0});
    for (const auto& s : split_list(cfg.get("methods", "r-tcsc-2"), ',')) m.methods.push_back(parse_method(s));
    m.replications = static_cast<int>(cfg.get_int("replications", 20));
    m.master_seed = static_cast<std::uint64_t>(cfg.get_int("master_seed", 0));
    m.output = cfg.get("output", "");
    m.k_max = static_cast<int>(cfg.get_int("k_max", 8));
    m.kmeans.restarts = static_cast<int>(cfg.get_int("restarts", m.kmeans.restarts));
    m.leave_one_out = parse_bool(cfg.get("leave_one_out", "false"), "leave_one_out");
    m.validate();
    return m;
}

std::uint64_t replication_seed(std::uint64_t master, int scenario, int replication) {
    return derive_seed(master, scenario, replication);
}

std::vector<ResultRow> run_bench(const ExperimentManifest& m) {
    m.validate();
    const int S = static_cast<int>(m.scenarios.size());
    const int M = static_cast<int>(m.methods.size());
    const int R = m.replications;
    std::vector<ResultRow> rows(static_cast<std::size_t>(S) * M * R);
    auto slot = [&](int s, int mi, int r) -> ResultRow& {
        return rows[(static_cast<std::size_t>(s) * M + mi) * R + r];
    };

#pragma omp parallel for collapse(2) schedule(dynamic, 1)
    for (int s = 0; s < S; ++s) {
        for (int r = 0; r < R; ++r) {
            const std::uint64_t seed = replication_seed(m.master_seed, s, r);
            for (int mi = 0; mi < M; ++mi) {
                auto& row = slot(s, mi, r);
                row.scenario = s;
                row.method = m.methods[static_cast<std::size_t>(mi)];
                row.replication = r;
                row.seed = seed;
                row.loss = kNaN;
                row.runtime_ms = kNaN;
            }
            ScenarioConfig sc = m.scenarios[static_cast<std::size_t>(s)];
            sc.seed = seed;
            try {
                const GeneratedNetwork net = generate(sc);
                const Eigen::MatrixXd& a = net.adjacency.matrix();
                TcscOptions opts;
                opts.kmeans = m.kmeans;
                opts.kmeans.seed = derive_seed(seed, 1);

                const auto t0 = Clock::now();
                const Spectrum spec = spectrum(a);
                const double spectrum_ms = ms_since(t0);

                // Cumulative stage losses and times for the clustering pipeline.
                double stage_loss[3] = {kNaN, kNaN, kNaN};
                double stage_ms[3] = {kNaN, kNaN, kNaN};
                bool need_cluster = false;
                int need_steps = 0;
                for (Method meth : m.methods) {
                    if (meth == Method::svcp) continue;
                    need_cluster = true;
                    if (meth == Method::r_tcsc_1) need_steps = std::max(need_steps, 1);
                    if (meth == Method::r_tcsc_2) need_steps = std::max(need_steps, 2);
                }
                if (need_cluster) {
                    try {
                        const auto t1 = Clock::now();
                        LabelVector c = tcsc_detailed(spec, sc.k, opts).labels;
                        stage_ms[0] = spectrum_ms + ms_since(t1);
                        stage_loss[0] = misclustering_loss(net.labels, c).loss;
                        for (int t = 1; t <= need_steps; ++t) {
                            const auto t2 = Clock::now();
                            c = refine_step(a, c, m.leave_one_out);
                            stage_ms[t] = stage_ms[t - 1] + ms_since(t2);
                            stage_loss[t] = misclustering_loss(net.labels, c).loss;
                        }
                    } catch (const std::exception&) {
                        // later stages stay NaN
                    }
                }
                for (int mi = 0; mi < M; ++mi) {
                    auto& row = slot(s, mi, r);
                    if (row.method == Method::svcp) {
                        try {
                            const auto t3 = Clock::now();
                            SvcpConfig scfg;
                            scfg.k_max = m.k_max;
                            scfg.tcsc = opts;
                            const SvcpTrace tr = select_k(spec, a, scfg);
                            row.runtime_ms = spectrum_ms + ms_since(t3);
                            row.chosen_k = tr.chosen_k;
                            row.loss = tr.chosen_k == sc.k ? 0.0 : 1.0;
                        } catch (const std::exception&) {
                        }
                        continue;
                    }
                    const int stage = row.method == Method::tcsc ? 0 : row.method == Method::r_tcsc_1 ? 1 : 2;
                    row.loss = stage_loss[stage];
                    row.runtime_ms = stage_ms[stage];
                }
            } catch (const std::exception&) {
                // generation failure: the whole replication stays NaN
            }
        }
    }
    return rows;
}

std::vector<SummaryRow> summarize(const ExperimentManifest& m, const std::vector<ResultRow>& rows) {
    std::vector<SummaryRow> out;
    for (std::size_t s = 0; s < m.scenarios.size(); ++s) {
        for (Method meth : m.methods) {
            SummaryRow sr;
            sr.scenario = static_cast<int>(s);
            sr.method = meth;
            double sum = 0, sum_t = 0;
            std::vector<double> vals;
            for (const auto& r : rows) {
                if (r.scenario != sr.scenario || r.method != meth || !std::isfinite(r.loss)) continue;
                vals.push_back(r.loss);
                sum += r.loss;
                sum_t += r.runtime_ms;
            }
            sr.count = static_cast<int>(vals.size());
            if (sr.count > 0) {
                sr.mean_loss = sum / sr.count;
                sr.mean_runtime_ms = sum_t / sr.count;
                double ss = 0;
                for (double v : vals) ss += (v - sr.mean_loss) * (v - sr.mean_loss);
                sr.sd_loss = sr.count > 1 ? std::sqrt(ss / (sr.count - 1)) : 0.0;
            } else {
                sr.mean_loss = sr.sd_loss = sr.mean_runtime_ms = kNaN;
            }
            out.push_back(sr);
        }
    }
    return out;
}

void write_results_csv(std::ostream& out, const ExperimentManifest& m,
                       const std::vector<ResultRow>& rows, const std::vector<SummaryRow>& summary) {
    out << kResultsSchema << '\n'
        << "kind,scenario,n,k,size_mode,popularity,method,replication,seed,loss,loss_sd,count,chosen_k,"
           "runtime_ms\n";
    auto scenario_cols = [&](int s) {
        const auto& sc = m.scenarios[static_cast<std::size_t>(s)];
        std::ostringstream os;
        os << s << ',' << sc.n << ',' << sc.k << ',' << to_string(sc.size_mode) << ",\""
           << to_string(sc.popularity) << '"';
        return os.str();
    };
    out << std::setprecision(10);
    for (const auto& r : rows) {
        out << "data," << scenario_cols(r.scenario) << ',' << to_string(r.method) << ','
            << r.replication << ',' << r.seed << ',' << r.loss << ",,,";
        if (r.method == Method::svcp && r.chosen_k > 0) out << r.chosen_k;
        out << ',' << std::fixed << std::setprecision(3) << r.runtime_ms << std::defaultfloat
            << std::setprecision(10) << '\n';
    }
    for (const auto& s : summary) {
        out << "summary," << scenario_cols(s.scenario) << ',' << to_string(s.method) << ",,,"
            << s.mean_loss << ',' << s.sd_loss << ',' << s.count << ",," << std::fixed
            << std::setprecision(3) << s.mean_runtime_ms << std::defaultfloat << std::setprecision(10)
            << '\n';
    }
}

}  // namespace pabm
