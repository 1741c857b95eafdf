#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "yasca/bipartition.hpp"
#include "yasca/graph.hpp"

namespace yasca {

/// Which blocks of a bipartition count as "the same cluster" for a pair.
enum class CoMembershipMode {
    BothClusters,   // together in C, or together in its complement
    CommunityOnly,  // together in C
};

CoMembershipMode parse_co_membership_mode(std::string_view name);
std::string_view to_string(CoMembershipMode mode);

struct ConsensusConfig {
    double tau = 0.5;
    CoMembershipMode mode = CoMembershipMode::BothClusters;
};

/// Number of bipartitions placing u and v in the same block. u != v.
std::uint32_t co_membership_count(std::span<const Bipartition> bips, std::size_t n, NodeId u, NodeId v,
                                  CoMembershipMode mode);

/// How pair counts are gathered.
///   Dense:  per-node membership bit rows, pairs counted by popcount
///           (AND for community-only, n_bips - popcount(XOR) for both).
///   Sparse: walks the pairs inside each community; community-only only.
enum class CountRoute { Dense, Sparse };

/// Upper-triangle co-membership counts, row-major over pairs u < v.
struct PairCounts {
    std::size_t nodes = 0;
    std::uint32_t total = 0;  // number of bipartitions
    std::vector<std::uint32_t> counts;

    std::uint32_t at(NodeId u, NodeId v) const;
    static std::size_t index(std::size_t n, std::size_t u, std::size_t v);
};

PairCounts count_co_memberships(std::size_t n, std::span<const Bipartition> bips, CoMembershipMode mode,
                                CountRoute route = CountRoute::Dense);

/// Consensus graph over the original nodes: pair weight is the fraction of
/// bipartitions placing the pair in one block; a pair becomes an edge when
/// that fraction is positive and at least tau. Edges are not restricted to
/// pairs adjacent in the input graph, and nodes may be left isolated.
Graph build_consensus(std::span<const std::string> labels, std::span<const Bipartition> bips,
                      const ConsensusConfig& cfg);

}  // namespace yasca
