#include "yasca/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <exception>
#include <fstream>
#include <thread>

#include <json.hpp>

#include "yasca/consensus.hpp"
#include "yasca/error.hpp"
#include "yasca/graph_io.hpp"
#include "yasca/local_community.hpp"

namespace yasca {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
    return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

// Rethrows anything that escaped a stage as an Error naming that stage.
template <class F>
auto in_stage(const char* stage, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw invariant_error(stage, e.what());
    }
}

// Shortest decimal that reads back as the same double; keeps the JSON
// payload byte-stable.
std::string exact(double x) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, end);
}

}  // namespace

std::vector<Bipartition> compute_local_communities(const Graph& g, std::span<const NodeId> seeds,
                                                   const LocalConfig& cfg, std::size_t workers) {
    std::vector<Bipartition> out(seeds.size());
    if (seeds.empty()) return out;
    workers = std::clamp<std::size_t>(workers, 1, seeds.size());

    std::vector<std::exception_ptr> errors(seeds.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next.fetch_add(1); i < seeds.size(); i = next.fetch_add(1)) {
            try {
                out[i] = expand_local_community(g, seeds[i], cfg);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };

    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

Detection detect_communities(const Graph& g, const YascaConfig& cfg, std::size_t workers, StageTimings* timings) {
    StageTimings local_timings;
    StageTimings& tm = timings ? *timings : local_timings;
    Detection d;

    auto t = Clock::now();
    d.seeds = in_stage("seeding", [&] { return select_seeds(g, cfg.seed); });
    if (d.seeds.empty()) throw usage_error("seeding", "no seeds selected; raise seed.p_high or seed.p_low");
    tm.seeding_ms = elapsed_ms(t);

    t = Clock::now();
    d.bipartitions = in_stage("local-community",
                              [&] { return compute_local_communities(g, d.seeds, cfg.local, workers); });
    tm.local_ms = elapsed_ms(t);

    t = Clock::now();
    d.consensus = in_stage("consensus", [&] { return build_consensus(g.labels(), d.bipartitions, cfg.consensus); });
    tm.consensus_ms = elapsed_ms(t);

    t = Clock::now();
    if (d.consensus.edge_count() == 0) {
        d.warnings.push_back("consensus graph has no edges; every node is its own community");
        d.partition = Partition::singletons(g.node_count());
    } else {
        const LouvainResult lr = in_stage("louvain", [&] { return louvain(d.consensus, cfg.louvain); });
        d.partition = lr.partition;
        d.consensus_modularity = lr.modularity;
    }
    tm.louvain_ms = elapsed_ms(t);
    return d;
}

RunResult run_dataset(const std::filesystem::path& graph_path,
                      const std::optional<std::filesystem::path>& truth_path, const RunConfig& cfg) {
    RunResult r;
    r.dataset = graph_path.stem().string();
    r.config = describe(cfg);

    auto t = Clock::now();
    const Graph g = load_graph(graph_path, LoadOptions{cfg.allow_self_loops});
    std::optional<Partition> truth;
    if (truth_path) {
        std::ifstream in(*truth_path);
        if (!in) throw data_error("eval", "cannot open ground truth '" + truth_path->string() + "'");
        truth = align_partition(read_labeled_partition(in), g.labels());
    }
    r.timings.load_ms = elapsed_ms(t);
    r.node_count = g.node_count();
    r.edge_count = g.edge_count();

    const Detection d = detect_communities(g, cfg.yasca, cfg.workers, &r.timings);
    r.consensus_edge_count = d.consensus.edge_count();
    r.consensus_modularity = d.consensus_modularity;
    r.warnings = d.warnings;

    std::optional<Partition> baseline;
    if (cfg.baseline_louvain) {
        t = Clock::now();
        baseline = in_stage("louvain", [&] { return louvain(g, cfg.yasca.louvain).partition; });
        r.baseline_community_count = baseline->community_count;
        r.timings.baseline_ms = elapsed_ms(t);
    }

    t = Clock::now();
    r.community_count = d.partition.community_count;
    r.partition = label_partition(d.partition, g.labels());
    for (NodeId s : d.seeds) r.seeds_used.push_back(g.label(s));
    if (truth) {
        r.yasca_nmi = nmi(d.partition, *truth);
        if (baseline) r.baseline_nmi = nmi(*baseline, *truth);
    }
    r.timings.eval_ms = elapsed_ms(t);
    return r;
}

std::vector<RunResult> run_pipeline(const RunConfig& cfg) {
    if (cfg.graph_paths.empty()) throw usage_error("config", "no input graph given");
    if (!cfg.ground_truth_paths.empty() && cfg.ground_truth_paths.size() != cfg.graph_paths.size()) {
        throw usage_error("config", "give one ground-truth file per graph");
    }
    if (cfg.workers == 0) throw usage_error("config", "workers must be >= 1");

    std::vector<RunResult> results;
    for (std::size_t i = 0; i < cfg.graph_paths.size(); ++i) {
        std::optional<std::filesystem::path> truth;
        if (!cfg.ground_truth_paths.empty()) truth = cfg.ground_truth_paths[i];
        results.push_back(run_dataset(cfg.graph_paths[i], truth, cfg));
        write_run_outputs(results.back(), cfg.output_dir / results.back().dataset);
    }
    if (cfg.emit_plot_data) emit_plot_data(results, cfg.output_dir / "plot.csv");
    return results;
}

namespace {

nlohmann::ordered_json to_json(const RunResult& r, bool with_timings) {
    using nlohmann::ordered_json;
    auto opt_real = [](const std::optional<double>& x) -> ordered_json {
        return x ? ordered_json(*x) : ordered_json(nullptr);
    };
    ordered_json config = ordered_json::object();
    for (const auto& [k, v] : r.config) config[k] = v;

    ordered_json doc;
    doc["dataset"] = r.dataset;
    doc["config"] = config;
    doc["nodes"] = r.node_count;
    doc["edges"] = r.edge_count;
    doc["seeds_used"] = r.seeds_used;
    doc["community_count"] = r.community_count;
    doc["consensus_edge_count"] = r.consensus_edge_count;
    doc["consensus_modularity"] = opt_real(r.consensus_modularity);
    if (r.yasca_nmi) doc["yasca_nmi"] = *r.yasca_nmi;
    if (r.baseline_community_count) doc["baseline_community_count"] = *r.baseline_community_count;
    if (r.baseline_nmi) doc["baseline_nmi"] = *r.baseline_nmi;
    doc["warnings"] = r.warnings;
    if (with_timings) {
        const StageTimings& t = r.timings;
        doc["timings"] = {{"load_ms", t.load_ms},     {"seeding_ms", t.seeding_ms},
                          {"local_ms", t.local_ms},   {"consensus_ms", t.consensus_ms},
                          {"louvain_ms", t.louvain_ms}, {"baseline_ms", t.baseline_ms},
                          {"eval_ms", t.eval_ms}};
    }
    return doc;
}

}  // namespace

std::string result_json(const RunResult& r) { return to_json(r, true).dump(2) + "\n"; }

std::string stable_result_json(const RunResult& r) { return to_json(r, false).dump(2) + "\n"; }

void write_run_outputs(const RunResult& r, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw data_error("cli", "cannot create output directory '" + dir.string() + "': " + ec.message());

    std::ofstream part(dir / "partition.tsv");
    std::ofstream result(dir / "result.json");
    if (!part || !result) throw data_error("cli", "cannot write into '" + dir.string() + "'");
    write_labeled_partition(part, r.partition);
    result << result_json(r);
}

void emit_plot_data(std::span<const RunResult> results, const std::filesystem::path& path) {
    if (results.empty()) throw usage_error("cli", "no results to plot");
    std::ofstream out(path);
    if (!out) throw data_error("cli", "cannot write plot data to '" + path.string() + "'");
    out << "algorithm,dataset,nmi\n";
    for (const RunResult& r : results) {
        if (r.yasca_nmi) out << "yasca," << r.dataset << ',' << exact(*r.yasca_nmi) << '\n';
    }
    for (const RunResult& r : results) {
        if (r.baseline_nmi) out << "louvain-baseline," << r.dataset << ',' << exact(*r.baseline_nmi) << '\n';
    }
}

}  // namespace yasca
