#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace yasca {

using NodeId = std::uint32_t;

struct Neighbor {
    NodeId node;
    double weight;
};

/// Immutable undirected weighted graph over dense indices 0..n-1.
///
/// Each node carries an external string label. Proper edges are stored in
/// both endpoints' adjacency lists (sorted by neighbor index); self-loops are
/// kept apart in a per-node weight so the adjacency lists never contain the
/// node itself. Total weight m counts every distinct edge once, self-loops
/// included, so that the sum of weighted degrees equals 2m.
///
/// Built through GraphBuilder; read-only afterwards and safe to share across
/// threads.
class Graph {
public:
    Graph() = default;

    std::size_t node_count() const noexcept { return labels_.size(); }
    std::size_t edge_count() const noexcept { return edge_count_; }
    double total_weight() const noexcept { return total_weight_; }

    /// Weighted degree; a self-loop contributes twice its weight.
    double degree(NodeId u) const;
    /// Number of distinct neighbors other than u itself.
    std::size_t neighbor_count(NodeId u) const;
    double self_loop_weight(NodeId u) const;
    std::span<const Neighbor> neighbors(NodeId u) const;

    /// Weight of edge {u, v}, or 0 when absent. u == v returns the self-loop.
    double weight(NodeId u, NodeId v) const;

    const std::string& label(NodeId u) const;
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    /// Dense index for a label, or -1 when the label is unknown.
    std::int64_t find(std::string_view label) const;

    /// Calls f(u, v, w) once per edge with u <= v, self-loops included,
    /// in ascending (u, v) order.
    template <class F>
    void for_each_edge(F&& f) const {
        for (NodeId u = 0; u < node_count(); ++u) {
            if (self_loops_[u] > 0.0) f(u, u, self_loops_[u]);
            for (const Neighbor& nb : neighbors(u)) {
                if (nb.node > u) f(u, nb.node, nb.weight);
            }
        }
    }

private:
    friend class GraphBuilder;

    void check(NodeId u) const;

    std::vector<std::string> labels_;
    std::unordered_map<std::string, NodeId> index_;
    std::vector<std::size_t> offsets_{0};
    std::vector<Neighbor> adjacency_;
    std::vector<double> self_loops_;
    std::vector<double> degrees_;
    std::size_t edge_count_ = 0;
    double total_weight_ = 0.0;
};

/// Accumulates labelled nodes and edges, rejecting anything that would break
/// the Graph invariants (non-positive weights, duplicates, unknown nodes).
class GraphBuilder {
public:
    GraphBuilder() = default;
    /// n nodes labelled "0".."n-1".
    explicit GraphBuilder(std::size_t n);
    explicit GraphBuilder(std::vector<std::string> labels);

    /// Returns the index of an existing label or appends a new node.
    NodeId add_node(std::string_view label);
    std::size_t node_count() const noexcept { return labels_.size(); }

    /// Throws on duplicates, weight <= 0, or out-of-range endpoints.
    /// u == v sets the self-loop weight.
    void add_edge(NodeId u, NodeId v, double weight);
    bool has_edge(NodeId u, NodeId v) const;

    Graph build() &&;

private:
    static std::uint64_t key(NodeId u, NodeId v) {
        if (u > v) std::swap(u, v);
        return (static_cast<std::uint64_t>(u) << 32) | v;
    }

    std::vector<std::string> labels_;
    std::unordered_map<std::string, NodeId> index_;
    std::vector<std::pair<std::uint64_t, double>> edges_;
    std::unordered_map<std::uint64_t, std::size_t> seen_;
};

}  // namespace yasca
