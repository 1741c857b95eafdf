#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "yasca/consensus.hpp"
#include "yasca/local_community.hpp"
#include "yasca/louvain.hpp"
#include "yasca/seeding.hpp"

namespace yasca {

/// Tunables of the detection pipeline proper.
struct YascaConfig {
    SeedConfig seed;
    LocalConfig local;
    ConsensusConfig consensus;
    LouvainConfig louvain;
};

/// Everything a CLI run needs.
struct RunConfig {
    std::vector<std::filesystem::path> graph_paths;
    std::vector<std::filesystem::path> ground_truth_paths;  // empty, or one per graph
    YascaConfig yasca;
    std::filesystem::path output_dir = "yasca-out";
    bool emit_plot_data = false;
    bool baseline_louvain = false;
    bool allow_self_loops = false;
    std::size_t workers = 1;
};

/// Sets one dotted key ("seed.p_high", "consensus.tau", ...). Dashes after
/// the section separator are read as underscores, so "seed.p-high" works
/// too. Throws a usage error on unknown keys or unparsable values.
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value);

/// Flat "section.key = value" lines; '#' starts a comment.
void load_config(RunConfig& cfg, std::istream& in);
void load_config_file(RunConfig& cfg, const std::filesystem::path& path);

/// Canonical key/value echo of the pipeline tunables, in fixed order.
std::vector<std::pair<std::string, std::string>> describe(const RunConfig& cfg);

/// Every key apply_setting accepts, canonical spelling.
const std::vector<std::string>& known_keys();

}  // namespace yasca
