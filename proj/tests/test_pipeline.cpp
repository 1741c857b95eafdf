#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "support/oracles.hpp"
#include "yasca/config.hpp"
#include "yasca/datasets.hpp"
#include "yasca/error.hpp"
#include "yasca/graph_io.hpp"
#include "yasca/pipeline.hpp"

using namespace yasca;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("yasca-test-" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

RunConfig karate_config(const fs::path& out) {
    RunConfig cfg;
    cfg.graph_paths = {YASCA_TEST_DATA_DIR "/karate.edges"};
    cfg.ground_truth_paths = {YASCA_TEST_DATA_DIR "/karate.truth"};
    cfg.output_dir = out;
    return cfg;
}

}  // namespace

TEST_SUITE("pipeline") {

TEST_CASE("config: keys, dashes, files, errors") {
    RunConfig cfg;
    apply_setting(cfg, "seed.p-high", "0.1");
    apply_setting(cfg, "consensus.mode", "community-only");
    apply_setting(cfg, "local.metrics", "m,l");
    CHECK(cfg.yasca.seed.p_high == 0.1);
    CHECK(cfg.yasca.consensus.mode == CoMembershipMode::CommunityOnly);

    std::istringstream file("# comment\nseed.strategy = random\nseed.k = 4\n\nworkers = 3\n");
    load_config(cfg, file);
    CHECK(cfg.yasca.seed.strategy == SeedStrategy::Random);
    CHECK(cfg.yasca.seed.k == 4u);
    CHECK(cfg.workers == 3);

    CHECK_THROWS_AS(apply_setting(cfg, "consensus.tau", "1.5"), Error);
    CHECK_THROWS_AS(apply_setting(cfg, "seed.p_low", "-0.1"), Error);
    CHECK_THROWS_AS(apply_setting(cfg, "nope", "1"), Error);
    CHECK_THROWS_AS(apply_setting(cfg, "seed.k", "many"), Error);
    std::istringstream bad("seed.k 4\n");
    CHECK_THROWS_AS(load_config(cfg, bad), Error);
    for (const std::string& key : known_keys()) CHECK(key.find('-') == std::string::npos);
}

TEST_CASE("describe omits the worker count") {
    RunConfig a;
    RunConfig b;
    b.workers = 8;
    CHECK(describe(a) == describe(b));
    CHECK(describe(a).size() == 13);
}

TEST_CASE("parallel local communities keep seed order") {
    const Graph g = load_graph(YASCA_TEST_DATA_DIR "/karate.edges");
    std::vector<NodeId> seeds(g.node_count());
    for (NodeId u = 0; u < g.node_count(); ++u) seeds[u] = u;
    const auto serial = compute_local_communities(g, seeds, LocalConfig{}, 1);
    for (std::size_t workers : {2u, 3u, 8u, 64u}) {
        CHECK(compute_local_communities(g, seeds, LocalConfig{}, workers) == serial);
    }
    for (std::size_t i = 0; i < seeds.size(); ++i) CHECK(serial[i].seed == seeds[i]);
}

TEST_CASE("worker errors surface") {
    const Graph g = oracle::two_triangles().to_graph();
    const std::vector<NodeId> seeds = {0, 9};
    CHECK_THROWS_AS(compute_local_communities(g, seeds, LocalConfig{}, 2), Error);
}

TEST_CASE("two triangles end to end") {
    const Graph g = oracle::two_triangles().to_graph();
    YascaConfig cfg;
    cfg.seed.strategy = SeedStrategy::All;
    const Detection d = detect_communities(g, cfg);
    CHECK(d.seeds.size() == 6);
    CHECK(d.partition == Partition::from_labels(std::vector<std::uint32_t>{0, 0, 0, 1, 1, 1}));
    CHECK(d.warnings.empty());

    cfg.consensus.mode = CoMembershipMode::CommunityOnly;
    const Detection only = detect_communities(g, cfg);
    CHECK(only.partition == d.partition);
    CHECK(only.consensus.weight(0, 1) == 0.5);
    CHECK(only.consensus.weight(2, 3) == 0.0);
}

TEST_CASE("edgeless consensus falls back to singletons with a warning") {
    const Graph g = oracle::two_triangles().to_graph();
    YascaConfig cfg;
    cfg.seed.strategy = SeedStrategy::All;
    cfg.consensus.mode = CoMembershipMode::CommunityOnly;
    cfg.consensus.tau = 1.0;
    const Detection d = detect_communities(g, cfg);
    CHECK(d.consensus.edge_count() == 0);
    CHECK(d.partition == Partition::singletons(6));
    CHECK(d.warnings.size() == 1);
    CHECK_FALSE(d.consensus_modularity.has_value());
}

TEST_CASE("no seeds is a usage error") {
    const Graph g = oracle::two_triangles().to_graph();
    YascaConfig cfg;
    cfg.seed.p_high = 0.0;
    cfg.seed.p_low = 0.0;
    CHECK_THROWS_AS(detect_communities(g, cfg), Error);
}

TEST_CASE("karate run writes partition, json and plot data") {
    const fs::path out = scratch_dir("karate");
    RunConfig cfg = karate_config(out);
    cfg.emit_plot_data = true;
    cfg.baseline_louvain = true;
    const auto results = run_pipeline(cfg);
    REQUIRE(results.size() == 1);
    const RunResult& r = results.front();
    CHECK(r.dataset == "karate");
    CHECK(r.node_count == 34);
    REQUIRE(r.yasca_nmi.has_value());
    CHECK(*r.yasca_nmi >= 0.0);
    CHECK(*r.yasca_nmi <= 1.0);
    CHECK(r.community_count >= 2);
    REQUIRE(r.baseline_nmi.has_value());

    CHECK(fs::exists(out / "karate" / "partition.tsv"));
    const std::string json = slurp(out / "karate" / "result.json");
    CHECK(json.find("\"yasca_nmi\"") != std::string::npos);
    CHECK(json.find("\"timings\"") != std::string::npos);
    CHECK(stable_result_json(r).find("\"timings\"") == std::string::npos);
    const std::string plot = slurp(out / "plot.csv");
    CHECK(plot.starts_with("algorithm,dataset,nmi\nyasca,karate,"));
    CHECK(plot.find("\nlouvain-baseline,karate,") != std::string::npos);
    fs::remove_all(out);
}

TEST_CASE("json leaves out nmi without ground truth") {
    const fs::path out = scratch_dir("no-truth");
    RunConfig cfg = karate_config(out);
    cfg.ground_truth_paths.clear();
    const auto results = run_pipeline(cfg);
    CHECK_FALSE(results.front().yasca_nmi.has_value());
    CHECK(stable_result_json(results.front()).find("nmi") == std::string::npos);
    CHECK_THROWS_AS(emit_plot_data(std::span<const RunResult>{}, out / "plot.csv"), Error);
    fs::remove_all(out);
}

TEST_CASE("results do not depend on workers") {
    const fs::path out = scratch_dir("workers");
    RunConfig cfg = karate_config(out);
    const RunResult one = run_pipeline(cfg).front();
    for (std::size_t w : {2u, 8u}) {
        cfg.workers = w;
        const RunResult many = run_pipeline(cfg).front();
        CHECK(stable_result_json(many) == stable_result_json(one));
        CHECK(many.partition == one.partition);
    }
    fs::remove_all(out);
}

TEST_CASE("ground truth mismatches name the nodes") {
    const fs::path out = scratch_dir("mismatch");
    const fs::path truth = out / "short.truth";
    std::ofstream(truth) << "1\ta\n2\tb\n";
    RunConfig cfg = karate_config(out);
    cfg.ground_truth_paths = {truth};
    try {
        run_pipeline(cfg);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Data);
        CHECK(std::string(e.what()).find("nodes missing from the partition: 3") != std::string::npos);
    }
    fs::remove_all(out);
}

TEST_CASE("dataset verification against a local copy") {
    const fs::path dir = scratch_dir("datasets");
    const DatasetInfo& karate = known_datasets().front();
    CHECK(karate.nodes == 34);
    CHECK(karate.url.ends_with("karate.zip"));
    CHECK_FALSE(verify_dataset(dir, karate, std::nullopt).present);

    // A GML copy of the fixture stands in for the download.
    const Graph g = load_graph(YASCA_TEST_DATA_DIR "/karate.edges");
    std::ofstream gml(dir / karate.file);
    gml << "graph [\n";
    for (NodeId u = 0; u < g.node_count(); ++u) gml << "  node [ id " << g.label(u) << " ]\n";
    g.for_each_edge([&](NodeId u, NodeId v, double) {
        gml << "  edge [ source " << g.label(u) << " target " << g.label(v) << " ]\n";
    });
    gml << "]\n";
    gml.close();

    const DatasetCheck ok = verify_dataset(dir, karate, std::nullopt);
    CHECK(ok.present);
    CHECK(ok.ok);
    CHECK(ok.sha256.size() == 64);
    CHECK(verify_dataset(dir, karate, ok.sha256).ok);
    CHECK_FALSE(verify_dataset(dir, karate, std::string(64, '0')).ok);

    std::ofstream(dir / "SHA256SUMS") << ok.sha256 << "  " << karate.file << "\n";
    CHECK(read_checksums(dir / "SHA256SUMS").at(karate.file) == ok.sha256);
    fs::remove_all(dir);
}

}  // TEST_SUITE
