#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace yasca {

using CommunityId = std::uint32_t;

/// Assignment of every node to exactly one community.
///
/// A normalized partition numbers its communities 0..k-1 in order of first
/// appearance along the node indices.
struct Partition {
    std::vector<CommunityId> assignment;
    std::size_t community_count = 0;

    std::size_t size() const noexcept { return assignment.size(); }
    CommunityId operator[](std::size_t u) const { return assignment[u]; }

    /// Renumbers arbitrary ids into the normalized form.
    static Partition from_labels(std::span<const CommunityId> labels);
    static Partition singletons(std::size_t n);
    static Partition single_community(std::size_t n);

    /// Member lists indexed by community id, each sorted ascending.
    std::vector<std::vector<std::uint32_t>> communities() const;

    friend bool operator==(const Partition&, const Partition&) = default;
};

}  // namespace yasca
