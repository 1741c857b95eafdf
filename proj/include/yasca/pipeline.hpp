#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "yasca/bipartition.hpp"
#include "yasca/config.hpp"
#include "yasca/eval.hpp"
#include "yasca/graph.hpp"
#include "yasca/louvain.hpp"
#include "yasca/partition.hpp"
#include "yasca/seeding.hpp"

namespace yasca {

/// Runs expand_local_community for every seed on up to `workers` threads.
/// The output is in seed order whatever the scheduling.
std::vector<Bipartition> compute_local_communities(const Graph& g, std::span<const NodeId> seeds,
                                                   const LocalConfig& cfg, std::size_t workers);

struct StageTimings {
    double load_ms = 0.0;
    double seeding_ms = 0.0;
    double local_ms = 0.0;
    double consensus_ms = 0.0;
    double louvain_ms = 0.0;
    double baseline_ms = 0.0;
    double eval_ms = 0.0;
};

/// Intermediate and final products of one detection run.
struct Detection {
    SeedSet seeds;
    std::vector<Bipartition> bipartitions;
    Graph consensus;
    Partition partition;
    std::optional<double> consensus_modularity;  // absent when the consensus graph has no edges
    std::vector<std::string> warnings;
};

/// Seeds, local communities, consensus graph, Louvain: the whole method on
/// an in-memory graph. A consensus graph without edges is not an error: the
/// result is the singleton partition plus a warning.
Detection detect_communities(const Graph& g, const YascaConfig& cfg, std::size_t workers = 1,
                             StageTimings* timings = nullptr);


struct RunResult {
    std::string dataset;
    std::vector<std::pair<std::string, std::string>> config;
    std::size_t node_count = 0;
    std::size_t edge_count = 0;
    std::optional<double> yasca_nmi;
    std::optional<double> baseline_nmi;
    std::optional<std::size_t> baseline_community_count;
    std::size_t community_count = 0;
    std::size_t consensus_edge_count = 0;
    std::optional<double> consensus_modularity;
    std::vector<std::string> seeds_used;  // node labels, ascending index
    std::vector<std::string> warnings;
    LabeledPartition partition;
    StageTimings timings;
};

/// Loads one dataset, runs the detection, scores against ground truth when
/// given. Errors surface tagged with the failing stage.
RunResult run_dataset(const std::filesystem::path& graph_path,
                      const std::optional<std::filesystem::path>& truth_path, const RunConfig& cfg);

/// Every dataset of cfg, writing "<out>/<dataset>/partition.tsv" and
/// "<out>/<dataset>/result.json", plus "<out>/plot.csv" when requested.
std::vector<RunResult> run_pipeline(const RunConfig& cfg);

/// The result document. Everything but the "timings" member is a pure
/// function of the configuration and the input files.
std::string result_json(const RunResult& r);
/// result_json without its "timings" member, for reproducibility checks.
std::string stable_result_json(const RunResult& r);

void write_run_outputs(const RunResult& r, const std::filesystem::path& dir);

/// "algorithm,dataset,nmi" rows for yasca and, where present, the Louvain
/// baseline. Results without NMI are skipped; an empty list is an error.
void emit_plot_data(std::span<const RunResult> results, const std::filesystem::path& path);

}  // namespace yasca
