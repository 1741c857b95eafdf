#include <doctest.h>

#include <cmath>
#include <random>

#include "support/oracles.hpp"
#include "yasca/error.hpp"
#include "yasca/louvain.hpp"

using namespace yasca;

namespace {

Partition two_blocks(std::size_t n, std::size_t split) {
    std::vector<std::uint32_t> labels(n);
    for (std::size_t i = split; i < n; ++i) labels[i] = 1;
    return Partition::from_labels(labels);
}

}  // namespace

TEST_SUITE("louvain") {

TEST_CASE("modularity of two triangles joined by a bridge") {
    const Graph g = oracle::two_triangles().to_graph();
    CHECK(modularity(g, two_blocks(6, 3)) == doctest::Approx(5.0 / 14.0).epsilon(1e-12));
    CHECK(modularity(g, Partition::singletons(6)) == doctest::Approx(-17.0 / 98.0).epsilon(1e-12));
    CHECK(modularity(g, Partition::single_community(6)) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("modularity requires edges") {
    CHECK_THROWS_AS(modularity(GraphBuilder(3).build(), Partition::singletons(3)), Error);
}

TEST_CASE("modularity counts self-loops once") {
    GraphBuilder b(2);
    b.add_edge(0, 0, 2.0);
    b.add_edge(0, 1, 1.0);
    const Graph g = std::move(b).build();
    // m = 3, d0 = 5, d1 = 1. One community: 3/3 - 1 = 0. Singletons: 2/3 - 25/36 - 1/36.
    CHECK(modularity(g, Partition::single_community(2)) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(modularity(g, Partition::singletons(2)) == doctest::Approx(2.0 / 3.0 - 26.0 / 36.0).epsilon(1e-12));
}

TEST_CASE("aggregation preserves modularity") {
    const Graph g = oracle::two_triangles().to_graph();
    const Partition p = two_blocks(6, 3);
    const Graph agg = aggregate(g, p);
    CHECK(agg.node_count() == 2);
    CHECK(agg.self_loop_weight(0) == 3.0);
    CHECK(agg.weight(0, 1) == 1.0);
    CHECK(agg.total_weight() == g.total_weight());
    CHECK(modularity(agg, Partition::singletons(2)) == doctest::Approx(modularity(g, p)).epsilon(1e-12));
}

TEST_CASE("two triangles and bridge") {
    const auto r = louvain(oracle::two_triangles().to_graph());
    CHECK(r.partition == two_blocks(6, 3));
    CHECK(r.modularity == doctest::Approx(0.357143).epsilon(1e-6));
}

TEST_CASE("disjoint cliques are found exactly") {
    const Graph g = oracle::two_disjoint_cliques().to_graph();
    const auto r = louvain(g);
    CHECK(r.partition == two_blocks(8, 4));
    CHECK(r.modularity == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("edgeless and isolated inputs") {
    const auto empty = louvain(GraphBuilder(4).build());
    CHECK(empty.partition == Partition::singletons(4));

    GraphBuilder b(5);
    b.add_edge(0, 1, 1.0);
    b.add_edge(1, 2, 1.0);
    b.add_edge(0, 2, 1.0);
    const auto r = louvain(std::move(b).build());
    CHECK(r.partition.community_count == 3);
    CHECK(r.partition.assignment[3] != r.partition.assignment[4]);
}

TEST_CASE("same seed, same result") {
    std::mt19937_64 rng(3);
    const Graph g = oracle::random_graph(rng, 40, 0.12, 3).to_graph();
    for (std::uint64_t seed : {0ULL, 1ULL, 77ULL}) {
        LouvainConfig cfg;
        cfg.rng_seed = seed;
        const auto a = louvain(g, cfg);
        const auto b = louvain(g, cfg);
        CHECK(a.partition == b.partition);
        CHECK(a.modularity == b.modularity);
    }
}

TEST_CASE("property: tracked modularity is exact and passes never lose") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 150; ++trial) {
        const auto edges = oracle::random_graph(rng, 2 + trial % 30, 0.25, 4);
        if (edges.edges.empty()) continue;
        const Graph g = edges.to_graph();
        LouvainConfig cfg;
        cfg.rng_seed = static_cast<std::uint64_t>(trial);
        const auto r = louvain(g, cfg);
        CHECK(std::abs(r.modularity - modularity(g, r.partition)) <= 1e-9);
        CHECK(std::abs(r.modularity - oracle::modularity(edges, r.partition.assignment)) <= 1e-9);
        for (std::size_t i = 1; i < r.pass_modularity.size(); ++i) {
            CHECK(r.pass_modularity[i] >= r.pass_modularity[i - 1] - 1e-12);
        }
        CHECK(r.partition == Partition::from_labels(r.partition.assignment));
    }
}

TEST_CASE("property: near the exhaustive optimum on small graphs") {
    std::mt19937_64 rng(23);
    int good = 0;
    int total = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const auto edges = oracle::random_graph(rng, 4 + trial % 5, 0.4);
        if (edges.edges.empty()) continue;
        const double best = oracle::best_modularity(edges);
        const double got = louvain(edges.to_graph()).modularity;
        CHECK(got <= best + 1e-9);
        ++total;
        if (got >= 0.95 * best - 1e-12) ++good;
    }
    CHECK(good * 10 >= total * 9);
}

}  // TEST_SUITE
