// Acceptance checks for the library. One PASS/FAIL line per criterion; the
// exit status is non-zero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support/oracles.hpp"
#include "yasca/consensus.hpp"
#include "yasca/eval.hpp"
#include "yasca/graph_io.hpp"
#include "yasca/local_community.hpp"
#include "yasca/louvain.hpp"
#include "yasca/pipeline.hpp"

using namespace yasca;
namespace fs = std::filesystem;

namespace {

// NMI of the karate run under the default protocol, recorded from the first
// verified run.
constexpr double kPinnedKarateNmi = 0.36882867960309301;

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) detail = what;
        pass = pass && ok;
    }
};

double seconds_since(Clock::time_point t) {
    return std::chrono::duration<double>(Clock::now() - t).count();
}

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::uint32_t> random_labels(std::mt19937_64& rng, std::size_t n) {
    std::uniform_int_distribution<std::uint32_t> k_dist(1, static_cast<std::uint32_t>(n));
    std::uniform_int_distribution<std::uint32_t> label(0, k_dist(rng) - 1);
    std::vector<std::uint32_t> out(n);
    for (auto& x : out) x = label(rng);
    return out;
}

Outcome nmi_oracle() {
    Outcome o;
    const auto t = Clock::now();
    std::mt19937_64 rng(1001);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(rng() % 12);
        const auto a = random_labels(rng, n);
        const auto b = random_labels(rng, n);
        const Partition pa = Partition::from_labels(a);
        const Partition pb = Partition::from_labels(b);
        const double ab = nmi(pa, pb);
        worst = std::max(worst, std::abs(ab - oracle::nmi(a, b)));
        o.require(ab == nmi(pb, pa), "asymmetric");

        std::vector<std::uint32_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0u);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<std::uint32_t> relabelled(n);
        for (std::size_t i = 0; i < n; ++i) relabelled[i] = perm[a[i]];
        o.require(nmi(Partition{relabelled, 0}, pb) == ab, "not permutation invariant");
    }
    const double secs = seconds_since(t);
    o.require(worst <= 1e-12, "max deviation " + fmt("%.3g", worst));
    o.require(secs < 5.0, "took " + fmt("%.2f", secs) + " s");
    if (o.pass) o.detail = "max deviation " + fmt("%.3g", worst) + ", " + fmt("%.3f", secs) + " s";
    return o;
}

Outcome metric_oracle() {
    Outcome o;
    const auto t = Clock::now();
    std::mt19937_64 rng(2002);
    std::size_t subsets = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(rng() % 12);
        const auto edges = oracle::random_graph(rng, n, 0.3, 5);
        const Graph g = edges.to_graph();
        std::bernoulli_distribution pick(0.5);
        for (int s = 0; s < 10; ++s) {
            std::vector<NodeId> members;
            for (NodeId u = 0; u < n; ++u) {
                if (pick(rng)) members.push_back(u);
            }
            if (members.empty()) continue;
            ++subsets;
            const std::vector<std::uint32_t> as_u32(members.begin(), members.end());
            const auto want = oracle::measures(edges, as_u32);
            const auto got = measure_community(g, members);
            o.require(metric_r(got) == oracle::r_metric(want), "R mismatch");
            o.require(metric_m(got) == oracle::m_metric(want), "M mismatch");
            o.require(metric_l(got) == oracle::l_metric(want), "L mismatch");

            // The incremental path the expansion uses must agree as well.
            LocalCommunityState state(g, members.front());
            for (std::size_t i = 1; i < members.size(); ++i) state.add(members[i]);
            o.require(state.measures() == got, "incremental state mismatch");
        }
    }
    const double secs = seconds_since(t);
    o.require(secs < 5.0, "took " + fmt("%.2f", secs) + " s");
    if (o.pass) o.detail = std::to_string(subsets) + " subsets exact, " + fmt("%.3f", secs) + " s";
    return o;
}

Outcome expansion_trace() {
    Outcome o;
    const auto t = Clock::now();
    const Graph g = oracle::two_triangles().to_graph();
    for (NodeId seed = 0; seed < 6; ++seed) {
        const auto c = expand_local_community(g, seed, LocalConfig{}).community;
        const std::vector<NodeId> want = seed < 3 ? std::vector<NodeId>{0, 1, 2} : std::vector<NodeId>{3, 4, 5};
        o.require(c == want, "seed " + std::to_string(seed) + " left its triangle");
    }
    std::vector<ExpansionStep> trace;
    expand_local_community(g, 2, LocalConfig{}, &trace);
    o.require(trace.size() == 2 && trace[0].added == 0 && trace[1].added == 1, "seed 2 trace differs");
    const double secs = seconds_since(t);
    o.require(secs < 1.0, "took " + fmt("%.2f", secs) + " s");
    if (o.pass) o.detail = "6/6 seeds, " + fmt("%.4f", secs) + " s";
    return o;
}

Outcome consensus_oracle() {
    Outcome o;
    std::mt19937_64 rng(4004);
    std::size_t graphs = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng() % 9);
        const std::size_t count = 1 + static_cast<std::size_t>(rng() % 8);
        std::bernoulli_distribution in(0.45);
        std::vector<Bipartition> bips;
        std::vector<std::vector<std::uint32_t>> sets;
        for (std::size_t i = 0; i < count; ++i) {
            Bipartition b{static_cast<NodeId>(rng() % n), {}};
            for (NodeId u = 0; u < n; ++u) {
                if (u == b.seed || in(rng)) b.community.push_back(u);
            }
            sets.emplace_back(b.community.begin(), b.community.end());
            bips.push_back(std::move(b));
        }
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));

        for (auto mode : {CoMembershipMode::BothClusters, CoMembershipMode::CommunityOnly}) {
            const bool complement = mode == CoMembershipMode::BothClusters;
            std::size_t previous = SIZE_MAX;
            for (double tau : {0.0, 0.25, 0.5, 0.75, 1.0}) {
                const Graph g = build_consensus(labels, bips, ConsensusConfig{tau, mode});
                ++graphs;
                std::size_t expected_edges = 0;
                for (NodeId u = 0; u < n; ++u) {
                    for (NodeId v = u + 1; v < n; ++v) {
                        const auto c = oracle::co_membership(sets, u, v, complement);
                        // c / count >= tau, compared in integers.
                        const bool kept = c > 0 && static_cast<double>(c) >= tau * static_cast<double>(count);
                        const double want = kept ? static_cast<double>(c) / static_cast<double>(count) : 0.0;
                        expected_edges += kept;
                        o.require(g.weight(u, v) == want, "weight mismatch");
                    }
                }
                o.require(g.edge_count() == expected_edges, "edge count mismatch");
                o.require(g.edge_count() <= previous, "tau monotonicity violated");
                previous = g.edge_count();
            }
        }
    }
    if (o.pass) o.detail = std::to_string(graphs) + " consensus graphs exact, monotone in tau";
    return o;
}

Outcome louvain_properties() {
    Outcome o;
    std::mt19937_64 rng(5005);

    for (int trial = 0; trial < 100; ++trial) {
        const auto edges = oracle::random_graph(rng, 2 + static_cast<std::size_t>(rng() % 40), 0.2, 3);
        if (edges.edges.empty()) continue;
        const Graph g = edges.to_graph();
        LouvainConfig cfg;
        cfg.rng_seed = static_cast<std::uint64_t>(trial);
        const auto r = louvain(g, cfg);
        o.require(std::abs(r.modularity - oracle::modularity(edges, r.partition.assignment)) <= 1e-9,
                  "internal Q differs from recomputed Q");
        for (std::size_t i = 1; i < r.pass_modularity.size(); ++i) {
            o.require(r.pass_modularity[i] >= r.pass_modularity[i - 1], "Q decreased across passes");
        }
    }

    const auto tri_edges = oracle::two_triangles();
    const auto tri = louvain(tri_edges.to_graph());
    std::vector<std::uint32_t> best;
    const double best_q = oracle::best_modularity(tri_edges, &best);
    o.require(tri.partition == Partition::from_labels(std::vector<std::uint32_t>{0, 0, 0, 1, 1, 1}),
              "two triangles not separated");
    o.require(std::abs(tri.modularity - 0.357143) <= 1e-6, "two-triangle Q " + fmt("%.9f", tri.modularity));
    o.require(std::abs(best_q - tri.modularity) <= 1e-12 && Partition::from_labels(best) == tri.partition,
              "two-triangle result is not the exhaustive optimum");

    const auto cliques = louvain(oracle::two_disjoint_cliques().to_graph());
    o.require(cliques.partition == Partition::from_labels(std::vector<std::uint32_t>{0, 0, 0, 0, 1, 1, 1, 1}),
              "disjoint cliques not recovered");

    int near = 0;
    int total = 0;
    while (total < 100) {
        const auto edges = oracle::random_graph(rng, 2 + static_cast<std::size_t>(rng() % 7), 0.4);
        if (edges.edges.empty()) continue;
        ++total;
        const double opt = oracle::best_modularity(edges);
        LouvainConfig cfg;
        cfg.rng_seed = static_cast<std::uint64_t>(total);
        const double got = louvain(edges.to_graph(), cfg).modularity;
        o.require(got <= opt + 1e-9, "Q above the exhaustive optimum");
        if (got >= 0.95 * opt - 1e-12) ++near;
    }
    o.require(near >= 90, std::to_string(near) + "/100 within 95% of optimum");
    if (o.pass) {
        o.detail = "Q(two triangles) = " + fmt("%.6f", tri.modularity) + ", " + std::to_string(near) +
                   "/100 within 95% of optimum";
    }
    return o;
}

RunConfig karate_config(const fs::path& out) {
    RunConfig cfg;
    cfg.graph_paths = {YASCA_TEST_DATA_DIR "/karate.edges"};
    cfg.ground_truth_paths = {YASCA_TEST_DATA_DIR "/karate.truth"};
    cfg.output_dir = out;
    cfg.yasca.seed.p_high = 0.25;
    cfg.yasca.seed.p_low = 0.25;
    cfg.yasca.consensus.tau = 0.5;
    return cfg;
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("yasca-acceptance-" + name);
    fs::remove_all(dir);
    return dir;
}

Outcome karate_protocol() {
    Outcome o;
    const fs::path out = scratch("karate");
    const auto t = Clock::now();
    const RunResult r = run_pipeline(karate_config(out)).front();
    const double secs = seconds_since(t);
    const double score = r.yasca_nmi.value_or(-1.0);

    std::ifstream truth_in(YASCA_TEST_DATA_DIR "/karate.truth");
    const Graph g = load_graph(YASCA_TEST_DATA_DIR "/karate.edges");
    const Partition truth = align_partition(read_labeled_partition(truth_in), g.labels());
    std::vector<double> baseline;
    for (std::uint64_t s = 0; s < 1000; ++s) baseline.push_back(nmi(random_partition(34, 2, s), truth));
    const double mean = std::accumulate(baseline.begin(), baseline.end(), 0.0) / 1000.0;
    double var = 0.0;
    for (double x : baseline) var += (x - mean) * (x - mean);
    const double sd = std::sqrt(var / 1000.0);

    o.require(secs < 5.0, "took " + fmt("%.2f", secs) + " s");
    o.require(score >= 0.0 && score <= 1.0, "NMI outside [0, 1]");
    o.require(r.community_count >= 2, std::to_string(r.community_count) + " communities");
    o.require(score > mean + 3.0 * sd, "NMI " + fmt("%.4f", score) + " not above random mean + 3 sd " +
                                           fmt("%.4f", mean + 3.0 * sd));
    o.require(std::abs(score - kPinnedKarateNmi) <= 1e-12,
              "NMI " + fmt("%.17g", score) + " differs from pinned " + fmt("%.17g", kPinnedKarateNmi));
    if (o.pass) {
        o.detail = "NMI " + fmt("%.6f", score) + ", " + std::to_string(r.community_count) +
                   " communities, random mean + 3 sd " + fmt("%.4f", mean + 3.0 * sd) + ", " + fmt("%.3f", secs) +
                   " s";
    }
    fs::remove_all(out);
    return o;
}

Outcome determinism() {
    Outcome o;
    std::string reference_json;
    std::string reference_tsv;
    for (int run = 0; run < 2; ++run) {
        for (std::size_t workers : {1u, 2u, 8u}) {
            const fs::path out = scratch("det");
            RunConfig cfg = karate_config(out);
            cfg.workers = workers;
            cfg.baseline_louvain = true;
            const RunResult r = run_pipeline(cfg).front();
            const std::string json = stable_result_json(r);
            const std::string tsv = slurp(out / "karate" / "partition.tsv");
            if (reference_json.empty()) {
                reference_json = json;
                reference_tsv = tsv;
            }
            const std::string tag = "run " + std::to_string(run + 1) + ", workers " + std::to_string(workers);
            o.require(json == reference_json, "result payload differs at " + tag);
            o.require(tsv == reference_tsv, "partition differs at " + tag);
            fs::remove_all(out);
        }
    }
    if (o.pass) o.detail = "6 runs byte-identical (workers 1, 2, 8; twice)";
    return o;
}

double planted_nmi(std::mt19937_64& rng, CoMembershipMode mode) {
    std::vector<std::uint32_t> truth;
    const auto edges = oracle::planted_partition(rng, 4, 8, 0.9, 0.05, truth);
    YascaConfig cfg;
    cfg.seed.strategy = SeedStrategy::All;
    cfg.consensus.mode = mode;
    cfg.consensus.tau = 0.5;
    const Detection d = detect_communities(edges.to_graph(), cfg);
    return nmi(d.partition, Partition::from_labels(truth));
}

Outcome planted_recovery() {
    Outcome o;
    std::mt19937_64 rng(8008);
    int good = 0;
    double total = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double score = planted_nmi(rng, CoMembershipMode::CommunityOnly);
        total += score;
        if (score >= 0.8) ++good;
    }
    // Same graphs, other co-membership mode: reported, not judged.
    std::mt19937_64 again(8008);
    int good_both = 0;
    for (int i = 0; i < 50; ++i) {
        if (planted_nmi(again, CoMembershipMode::BothClusters) >= 0.8) ++good_both;
    }
    o.require(good >= 40, std::to_string(good) + "/50 instances reach NMI 0.8");
    o.detail = std::to_string(good) + "/50 reach NMI 0.8 (mean " + fmt("%.4f", total / 50.0) +
               "); both-clusters mode: " + std::to_string(good_both) + "/50";
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {"nmi matches brute-force oracle", nmi_oracle},
        {"local metrics match naive enumeration", metric_oracle},
        {"expansion trace on two triangles", expansion_trace},
        {"consensus matches pair recount", consensus_oracle},
        {"louvain correctness properties", louvain_properties},
        {"karate end-to-end protocol", karate_protocol},
        {"determinism and worker independence", determinism},
        {"planted partition recovery", planted_recovery},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        failures += o.pass ? 0 : 1;
        std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, o.detail.c_str());
    }
    return failures == 0 ? 0 : 1;
}
