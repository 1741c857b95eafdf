// yasca: seed-centric community detection from the command line.
//
//   yasca run --graph karate.edges --ground-truth karate.truth --out results
//   yasca local --graph karate.edges --node 1
//   yasca consensus --graph karate.edges > consensus.edges
//   yasca nmi found.tsv truth.tsv
//   yasca fetch-datasets --dir data
//
// Exit codes: 0 success, 1 usage or configuration error, 2 data error,
// 3 internal invariant violation.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "yasca/config.hpp"
#include "yasca/consensus.hpp"
#include "yasca/datasets.hpp"
#include "yasca/error.hpp"
#include "yasca/eval.hpp"
#include "yasca/graph_io.hpp"
#include "yasca/kernels.hpp"
#include "yasca/local_community.hpp"
#include "yasca/pipeline.hpp"

namespace {

using namespace yasca;

// Dotted tunables every pipeline-driven subcommand accepts.
const std::vector<std::string>& tunable_keys() {
    static const std::vector<std::string> keys = {
        "seed.strategy",    "seed.p_high",        "seed.p_low",       "seed.k",
        "seed.rng_seed",    "local.metrics",      "local.accept",     "local.max_size",
        "consensus.tau",    "consensus.mode",     "louvain.rng_seed", "louvain.max_passes",
        "louvain.min_gain", "workers",
    };
    return keys;
}

std::string dashed(std::string key) {
    for (char& c : key) c = c == '_' ? '-' : c;
    return key;
}

struct Settings {
    std::string config_file;
    std::vector<std::string> graphs;
    std::vector<std::string> truths;
    std::map<std::string, std::string> values;
    std::string out;
    bool emit_plot_data = false;
    bool baseline_louvain = false;
    bool allow_self_loops = false;
};

void add_tunables(CLI::App* cmd, Settings& s) {
    cmd->add_option("--config", s.config_file, "Flat 'section.key = value' file; flags override it");
    for (const std::string& key : tunable_keys()) {
        std::string names = "--" + dashed(key);
        if (dashed(key) != key) names += ",--" + key;
        cmd->add_option_function<std::string>(
            names, [&s, key](const std::string& v) { s.values[key] = v; }, "Override " + key);
    }
    cmd->add_flag("--allow-self-loops", s.allow_self_loops, "Keep 'u u' lines in the input graph");
}

RunConfig resolve(const Settings& s) {
    RunConfig cfg;
    if (!s.config_file.empty()) load_config_file(cfg, s.config_file);
    for (const std::string& key : tunable_keys()) {
        if (auto it = s.values.find(key); it != s.values.end()) apply_setting(cfg, key, it->second);
    }
    if (!s.graphs.empty()) cfg.graph_paths.assign(s.graphs.begin(), s.graphs.end());
    if (!s.truths.empty()) cfg.ground_truth_paths.assign(s.truths.begin(), s.truths.end());
    if (!s.out.empty()) cfg.output_dir = s.out;
    cfg.emit_plot_data = cfg.emit_plot_data || s.emit_plot_data;
    cfg.baseline_louvain = cfg.baseline_louvain || s.baseline_louvain;
    cfg.allow_self_loops = cfg.allow_self_loops || s.allow_self_loops;
    return cfg;
}

Graph single_graph(const RunConfig& cfg) {
    if (cfg.graph_paths.size() != 1) throw usage_error("config", "this subcommand takes exactly one --graph");
    return load_graph(cfg.graph_paths.front(), LoadOptions{cfg.allow_self_loops});
}

int cmd_run(const Settings& s) {
    const RunConfig cfg = resolve(s);
    const auto results = run_pipeline(cfg);
    for (const RunResult& r : results) {
        std::cout << r.dataset << ": " << r.node_count << " nodes, " << r.seeds_used.size() << " seeds, "
                  << r.consensus_edge_count << " consensus edges, " << r.community_count << " communities";
        if (r.yasca_nmi) std::cout << ", nmi " << *r.yasca_nmi;
        if (r.baseline_nmi) std::cout << " (louvain baseline " << *r.baseline_nmi << ")";
        std::cout << '\n';
        for (const std::string& w : r.warnings) std::cerr << "warning: " << r.dataset << ": " << w << '\n';
    }
    std::cout << "results written to " << cfg.output_dir.string() << '\n';
    return 0;
}

int cmd_local(const Settings& s, const std::string& node, bool trace) {
    const RunConfig cfg = resolve(s);
    const Graph g = single_graph(cfg);
    const std::int64_t seed = g.find(node);
    if (seed < 0) throw data_error("local-community", "node '" + node + "' is not in the graph");

    std::vector<ExpansionStep> steps;
    const Bipartition b = expand_local_community(g, static_cast<NodeId>(seed), cfg.yasca.local, trace ? &steps : nullptr);
    if (trace) {
        std::cerr << "# added\tborda\tR\tM\tL\n";
        for (const ExpansionStep& st : steps) {
            std::cerr << "# " << g.label(st.added) << '\t' << st.borda_score << '\t' << st.values[0] << '\t'
                      << st.values[1] << '\t' << st.values[2] << '\n';
        }
    }
    for (NodeId u : b.community) std::cout << g.label(u) << '\n';
    return 0;
}

int cmd_consensus(const Settings& s) {
    const RunConfig cfg = resolve(s);
    const Graph g = single_graph(cfg);
    const SeedSet seeds = select_seeds(g, cfg.yasca.seed);
    const auto bips = compute_local_communities(g, seeds, cfg.yasca.local, cfg.workers);
    const Graph consensus = build_consensus(g.labels(), bips, cfg.yasca.consensus);
    if (s.out.empty() || s.out == "-") {
        write_edge_list(std::cout, consensus);
    } else {
        std::ofstream out(s.out);
        if (!out) throw data_error("cli", "cannot write '" + s.out + "'");
        write_edge_list(out, consensus);
    }
    return 0;
}

int cmd_nmi(const std::string& a_path, const std::string& b_path) {
    auto read = [](const std::string& path) {
        std::ifstream in(path);
        if (!in) throw data_error("eval", "cannot open '" + path + "'");
        return read_labeled_partition(in);
    };
    const LabeledPartition a = read(a_path);
    const LabeledPartition b = read(b_path);
    std::vector<std::string> order;
    order.reserve(a.entries.size());
    for (const auto& entry : a.entries) order.push_back(entry.first);
    const double score = nmi(align_partition(a, order), align_partition(b, order));
    std::printf("%.17g\n", score);
    return 0;
}

int cmd_fetch(const std::string& dir, const std::string& checksum_file, bool require) {
    std::map<std::string, std::string> pinned;
    if (!checksum_file.empty()) pinned = read_checksums(checksum_file);

    bool failed = false;
    for (const DatasetInfo& info : known_datasets()) {
        std::optional<std::string> expected;
        if (auto it = pinned.find(info.file); it != pinned.end()) expected = it->second;
        const DatasetCheck check = verify_dataset(dir, info, expected);
        std::cout << info.name << " (" << info.nodes << " nodes, " << info.edges << " edges)\n"
                  << "  source: " << info.url << '\n'
                  << "  ground truth: " << info.truth_note << '\n';
        if (!check.present) {
            std::cout << "  status: not downloaded; run\n"
                      << "    curl -LO " << info.url << " && unzip -o " << info.name << ".zip " << info.file
                      << " -d " << dir << '\n';
            failed = failed || require;
            continue;
        }
        std::cout << "  sha256: " << check.sha256 << '\n' << "  status: " << check.message << '\n';
        failed = failed || !check.ok;
    }
    return failed ? static_cast<int>(ErrorKind::Data) : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Seed-centric community detection: local communities, consensus graph, Louvain"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "yasca 1.0");

    Settings settings;

    auto* run = app.add_subcommand("run", "Full pipeline with optional NMI scoring");
    add_tunables(run, settings);
    run->add_option("--graph", settings.graphs, "Edge list or .gml file (repeatable)")->required();
    run->add_option("--ground-truth", settings.truths, "node<TAB>community file, one per --graph");
    run->add_option("--out", settings.out, "Output directory (default yasca-out)");
    run->add_flag("--emit-plot-data", settings.emit_plot_data, "Write <out>/plot.csv");
    run->add_flag("--baseline-louvain", settings.baseline_louvain, "Also run Louvain on the input graph");

    std::string node;
    bool trace = false;
    auto* local = app.add_subcommand("local", "Print the local community of one node");
    add_tunables(local, settings);
    local->add_option("--graph", settings.graphs, "Input graph")->required();
    local->add_option("--node", node, "Label of the seed node")->required();
    local->add_flag("--trace", trace, "Print accepted steps and metric values to stderr");

    auto* consensus = app.add_subcommand("consensus", "Dump the consensus graph as a weighted edge list");
    add_tunables(consensus, settings);
    consensus->add_option("--graph", settings.graphs, "Input graph")->required();
    consensus->add_option("--out", settings.out, "Output file (default stdout)");

    std::string nmi_a;
    std::string nmi_b;
    auto* nmi_cmd = app.add_subcommand("nmi", "NMI between two partition files");
    nmi_cmd->add_option("first", nmi_a, "Partition file")->required();
    nmi_cmd->add_option("second", nmi_b, "Partition file")->required();

    std::string data_dir = "datasets";
    std::string checksums;
    bool require = false;
    auto* fetch = app.add_subcommand("fetch-datasets", "List benchmark sources and verify downloaded copies");
    fetch->add_option("--dir", data_dir, "Directory holding the unpacked .gml files");
    fetch->add_option("--checksums", checksums, "sha256sum-style file pinning expected digests");
    fetch->add_flag("--require", require, "Fail when a dataset is missing");

    auto* kernels_cmd = app.add_subcommand("kernels", "Show which SIMD kernel variant is active");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return static_cast<int>(ErrorKind::Usage);
    }

    try {
        if (*run) return cmd_run(settings);
        if (*local) return cmd_local(settings, node, trace);
        if (*consensus) return cmd_consensus(settings);
        if (*nmi_cmd) return cmd_nmi(nmi_a, nmi_b);
        if (*fetch) return cmd_fetch(data_dir, checksums, require);
        if (*kernels_cmd) {
            std::cout << "active: " << kernels::to_string(kernels::active_isa()) << '\n'
                      << "avx2 supported: " << (kernels::supported(kernels::Isa::Avx2) ? "yes" : "no") << '\n';
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return static_cast<int>(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << '\n';
        return static_cast<int>(ErrorKind::Invariant);
    }
    return 0;
}
