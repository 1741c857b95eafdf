#pragma once

#include <array>
#include <limits>
#include <string_view>
#include <vector>

#include "yasca/bipartition.hpp"
#include "yasca/graph.hpp"

namespace yasca {

/// Local modularities used to rank candidate nodes.
///   R: boundary sharpness, b_in / (b_in + e_out)
///   M: internal over external edge weight, e_in / e_out
///   L: average internal degree over average boundary external degree
enum class MetricId { R = 0, M = 1, L = 2 };
inline constexpr std::size_t kMetricCount = 3;

/// Stands in for unbounded M and L once a community has no outgoing edges.
/// Compares above every finite value and equal to itself.
inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

/// How many metrics must strictly improve for a candidate to be accepted.
enum class AcceptRule { Majority, Any, All };

AcceptRule parse_accept_rule(std::string_view name);
std::string_view to_string(AcceptRule rule);
/// Parses a comma-separated subset of "r,m,l" (case-insensitive).
std::vector<MetricId> parse_metrics(std::string_view list);
std::string metrics_to_string(const std::vector<MetricId>& metrics);

struct LocalConfig {
    std::vector<MetricId> metrics{MetricId::R, MetricId::M, MetricId::L};
    AcceptRule accept = AcceptRule::Majority;
    std::size_t max_size = 0;  // 0 means no cap
};

/// Edge-weight sums describing a node set C.
struct CommunityMeasures {
    std::size_t size = 0;           // |C|
    std::size_t boundary_size = 0;  // |B|, members with a neighbor outside C
    double e_in = 0.0;              // weight with both endpoints in C (self-loops included)
    double e_out = 0.0;             // weight with exactly one endpoint in C
    double b_in = 0.0;              // weight inside C touching at least one boundary node

    friend bool operator==(const CommunityMeasures&, const CommunityMeasures&) = default;
};

double metric_r(const CommunityMeasures& c);
double metric_m(const CommunityMeasures& c);
double metric_l(const CommunityMeasures& c);
double metric_value(MetricId id, const CommunityMeasures& c);

/// From-scratch computation over an explicit member list.
CommunityMeasures measure_community(const Graph& g, std::span<const NodeId> members);

/// Incremental bookkeeping for a growing community.
///
/// Tracks per-node link counts and weights towards C so that the measures of
/// C + {u} can be evaluated in O(deg(u) + sum of degrees of members that
/// would stop being boundary nodes), without touching the rest of C.
/// Holds scratch space: one instance per thread.
class LocalCommunityState {
public:
    LocalCommunityState(const Graph& g, NodeId seed);

    const CommunityMeasures& measures() const noexcept { return measures_; }
    const std::vector<NodeId>& members() const noexcept { return members_; }
    bool contains(NodeId u) const { return in_community_[u] != 0; }
    bool is_boundary(NodeId u) const;

    /// Non-members adjacent to C, ascending.
    std::vector<NodeId> frontier() const;

    /// Measures of C + {u}; u must be outside C. Leaves the state unchanged.
    CommunityMeasures evaluate_addition(NodeId u) const;
    void add(NodeId u);

private:
    bool is_interior(NodeId u) const;
    CommunityMeasures evaluate_addition(NodeId u, double& interior) const;

    const Graph* graph_;
    std::vector<NodeId> members_;
    std::vector<char> in_community_;
    std::vector<std::uint32_t> member_links_;  // neighbors in C, per node
    std::vector<double> member_weight_;        // weight to C, per node
    double interior_weight_ = 0.0;             // weight with both endpoints interior
    CommunityMeasures measures_;
    mutable std::vector<char> scratch_;
};

/// One accepted step of an expansion, for tracing.
struct ExpansionStep {
    NodeId added;
    std::uint64_t borda_score;
    std::array<double, kMetricCount> values;  // indexed by MetricId
};

/// Grows the ego-centred community of seed.
///
/// Starting from {seed}, every frontier node is scored by each active metric
/// on C + {u}; the per-metric rankings (value descending, index ascending)
/// are combined with a Borda count and the winner joins C only if it strictly
/// improves enough active metrics (see AcceptRule). The loop stops at the
/// first rejection, an empty frontier, or the size cap.
Bipartition expand_local_community(const Graph& g, NodeId seed, const LocalConfig& cfg,
                                   std::vector<ExpansionStep>* trace = nullptr);

}  // namespace yasca
