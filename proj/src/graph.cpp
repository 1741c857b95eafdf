#include "yasca/graph.hpp"

#include <algorithm>
#include <cmath>

#include "yasca/error.hpp"

namespace yasca {

namespace {
constexpr const char* kStage = "graph-core";
}

void Graph::check(NodeId u) const {
    if (u >= node_count()) {
        throw usage_error(kStage, "node index " + std::to_string(u) + " out of range (n=" +
                                      std::to_string(node_count()) + ")");
    }
}

double Graph::degree(NodeId u) const {
    check(u);
    return degrees_[u];
}

std::size_t Graph::neighbor_count(NodeId u) const {
    check(u);
    return offsets_[u + 1] - offsets_[u];
}

double Graph::self_loop_weight(NodeId u) const {
    check(u);
    return self_loops_[u];
}

std::span<const Neighbor> Graph::neighbors(NodeId u) const {
    check(u);
    return {adjacency_.data() + offsets_[u], offsets_[u + 1] - offsets_[u]};
}

double Graph::weight(NodeId u, NodeId v) const {
    check(u);
    check(v);
    if (u == v) return self_loops_[u];
    auto nbs = neighbors(u);
    auto it = std::lower_bound(nbs.begin(), nbs.end(), v,
                               [](const Neighbor& nb, NodeId x) { return nb.node < x; });
    return (it != nbs.end() && it->node == v) ? it->weight : 0.0;
}

const std::string& Graph::label(NodeId u) const {
    check(u);
    return labels_[u];
}

std::int64_t Graph::find(std::string_view label) const {
    auto it = index_.find(std::string(label));
    return it == index_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

GraphBuilder::GraphBuilder(std::size_t n) {
    labels_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) add_node(std::to_string(i));
}

GraphBuilder::GraphBuilder(std::vector<std::string> labels) {
    labels_.reserve(labels.size());
    for (auto& l : labels) {
        if (index_.contains(l)) throw data_error(kStage, "duplicate node label '" + l + "'");
        add_node(l);
    }
}

NodeId GraphBuilder::add_node(std::string_view label) {
    std::string key_str(label);
    if (auto it = index_.find(key_str); it != index_.end()) return it->second;
    const auto id = static_cast<NodeId>(labels_.size());
    index_.emplace(key_str, id);
    labels_.push_back(std::move(key_str));
    return id;
}

void GraphBuilder::add_edge(NodeId u, NodeId v, double weight) {
    if (u >= labels_.size() || v >= labels_.size()) {
        throw usage_error(kStage, "edge endpoint out of range");
    }
    if (!(weight > 0.0) || !std::isfinite(weight)) {
        throw data_error(kStage, "edge weight must be a positive finite number");
    }
    const auto k = key(u, v);
    if (seen_.contains(k)) {
        throw data_error(kStage, "duplicate edge " + labels_[u] + " " + labels_[v]);
    }
    seen_.emplace(k, edges_.size());
    edges_.emplace_back(k, weight);
}

bool GraphBuilder::has_edge(NodeId u, NodeId v) const { return seen_.contains(key(u, v)); }

Graph GraphBuilder::build() && {
    Graph g;
    const std::size_t n = labels_.size();
    g.labels_ = std::move(labels_);
    g.index_ = std::move(index_);
    g.self_loops_.assign(n, 0.0);
    g.degrees_.assign(n, 0.0);

    // Canonical order makes every derived quantity independent of insertion order.
    std::sort(edges_.begin(), edges_.end());

    std::vector<std::size_t> counts(n, 0);
    for (const auto& [k, w] : edges_) {
        const auto u = static_cast<NodeId>(k >> 32);
        const auto v = static_cast<NodeId>(k & 0xffffffffu);
        if (u != v) {
            ++counts[u];
            ++counts[v];
        }
    }
    g.offsets_.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] = g.offsets_[i] + counts[i];
    g.adjacency_.resize(g.offsets_[n]);

    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    double total = 0.0;
    for (const auto& [k, w] : edges_) {
        const auto u = static_cast<NodeId>(k >> 32);
        const auto v = static_cast<NodeId>(k & 0xffffffffu);
        total += w;
        if (u == v) {
            g.self_loops_[u] = w;
            continue;
        }
        g.adjacency_[cursor[u]++] = {v, w};
        g.adjacency_[cursor[v]++] = {u, w};
    }
    for (std::size_t u = 0; u < n; ++u) {
        auto first = g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[u]);
        auto last = g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[u + 1]);
        std::sort(first, last, [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
        double d = 2.0 * g.self_loops_[u];
        for (auto it = first; it != last; ++it) d += it->weight;
        g.degrees_[u] = d;
    }
    g.edge_count_ = edges_.size();
    g.total_weight_ = total;

    edges_.clear();
    seen_.clear();
    return g;
}

}  // namespace yasca
