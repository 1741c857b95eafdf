#include "yasca/louvain.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "yasca/error.hpp"
#include "yasca/kernels.hpp"
#include "yasca/rng.hpp"

namespace yasca {

namespace {

constexpr const char* kStage = "louvain";
constexpr std::size_t kMaxSweeps = 10000;

// Phase one on a single level. Returns community ids per node (not
// normalized) and whether any node moved.
std::pair<std::vector<CommunityId>, bool> move_nodes(const Graph& g, Rng& rng) {
    const std::size_t n = g.node_count();
    const double two_m = 2.0 * g.total_weight();

    std::vector<CommunityId> community(n);
    std::iota(community.begin(), community.end(), CommunityId{0});
    std::vector<double> totals(n);
    for (NodeId u = 0; u < n; ++u) totals[u] = g.degree(u);

    std::vector<NodeId> order(n);
    std::iota(order.begin(), order.end(), NodeId{0});
    rng.shuffle(std::span<NodeId>(order));

    std::vector<double> link(n, 0.0);
    std::vector<CommunityId> touched;
    bool any_move = false;

    for (std::size_t sweep = 0; sweep < kMaxSweeps; ++sweep) {
        bool moved = false;
        for (NodeId u : order) {
            const CommunityId home = community[u];
            const double k_u = g.degree(u);

            touched.clear();
            for (const Neighbor& nb : g.neighbors(u)) {
                const CommunityId c = community[nb.node];
                if (link[c] == 0.0) touched.push_back(c);
                link[c] += nb.weight;
            }

            totals[home] -= k_u;
            const double scale = k_u / two_m;
            CommunityId best = home;
            double best_gain = link[home] - totals[home] * scale;
            for (CommunityId c : touched) {
                if (c == home) continue;
                const double gain = link[c] - totals[c] * scale;
                if (gain > best_gain || (gain == best_gain && best != home && c < best)) {
                    best = c;
                    best_gain = gain;
                }
            }
            totals[best] += k_u;
            if (best != home) {
                community[u] = best;
                moved = true;
            }
            for (CommunityId c : touched) link[c] = 0.0;
        }
        if (!moved) break;
        any_move = true;
    }
    return {std::move(community), any_move};
}

}  // namespace

double modularity(const Graph& g, const Partition& p) {
    if (p.size() != g.node_count()) throw usage_error(kStage, "partition does not cover the graph");
    const double m = g.total_weight();
    if (!(m > 0.0)) throw data_error(kStage, "modularity is undefined for a graph without edges");

    std::vector<double> internal(p.community_count, 0.0);
    std::vector<double> volume(p.community_count, 0.0);
    for (NodeId u = 0; u < g.node_count(); ++u) {
        if (p[u] >= p.community_count) throw usage_error(kStage, "community id out of range");
        volume[p[u]] += g.degree(u);
    }
    g.for_each_edge([&](NodeId u, NodeId v, double w) {
        if (p[u] == p[v]) internal[p[u]] += w;
    });
    for (double& e : internal) e /= m;
    for (double& d : volume) d /= 2.0 * m;
    return kernels::sum(internal) - kernels::sum_squares(volume);
}

Graph aggregate(const Graph& g, const Partition& p) {
    if (p.size() != g.node_count()) throw usage_error(kStage, "partition does not cover the graph");
    std::vector<double> self(p.community_count, 0.0);
    std::map<std::pair<CommunityId, CommunityId>, double> between;
    g.for_each_edge([&](NodeId u, NodeId v, double w) {
        CommunityId a = p[u];
        CommunityId b = p[v];
        if (a == b) {
            self[a] += w;
            return;
        }
        if (a > b) std::swap(a, b);
        between[{a, b}] += w;
    });
    GraphBuilder builder(p.community_count);
    for (CommunityId c = 0; c < p.community_count; ++c) {
        if (self[c] > 0.0) builder.add_edge(c, c, self[c]);
    }
    for (const auto& [key, w] : between) builder.add_edge(key.first, key.second, w);
    return std::move(builder).build();
}

LouvainResult louvain(const Graph& g, const LouvainConfig& cfg) {
    const std::size_t n = g.node_count();
    if (n == 0) throw data_error(kStage, "graph has no nodes");
    if (!(cfg.min_gain >= 0.0)) throw usage_error(kStage, "min_gain must be >= 0");
    if (cfg.max_passes == 0) throw usage_error(kStage, "max_passes must be > 0");

    LouvainResult result;
    if (!(g.total_weight() > 0.0)) {
        result.partition = Partition::singletons(n);
        return result;
    }

    Rng rng(derive_seed(cfg.rng_seed, 1));
    std::vector<CommunityId> membership(n);
    std::iota(membership.begin(), membership.end(), CommunityId{0});

    Graph level = g;
    double q = modularity(level, Partition::singletons(n));
    for (std::size_t pass = 0; pass < cfg.max_passes; ++pass) {
        auto [raw, moved] = move_nodes(level, rng);
        if (!moved) break;

        const Partition level_partition = Partition::from_labels(raw);
        const double next_q = modularity(level, level_partition);
        if (next_q < q - 1e-12) {
            throw invariant_error(kStage, "modularity decreased during pass " + std::to_string(pass));
        }
        for (CommunityId& c : membership) c = level_partition[c];
        result.pass_modularity.push_back(next_q);

        const double gain = next_q - q;
        q = next_q;
        level = aggregate(level, level_partition);
        if (gain <= cfg.min_gain) break;
    }

    result.partition = Partition::from_labels(membership);
    result.modularity = q;
    return result;
}

}  // namespace yasca
