#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "yasca/graph.hpp"

namespace yasca {

struct BordaScore {
    NodeId node;
    std::uint64_t score;

    friend bool operator==(const BordaScore&, const BordaScore&) = default;
};

/// Borda count over rankings of one candidate set.
///
/// A candidate at 1-based rank r among c candidates earns c - r points per
/// ranking. The result is sorted by score descending, then node ascending,
/// so front() is the winner. Throws when the rankings disagree on the
/// candidate set or contain duplicates.
std::vector<BordaScore> borda_aggregate(std::span<const std::vector<NodeId>> rankings);

}  // namespace yasca
