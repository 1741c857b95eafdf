#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "yasca/graph.hpp"

namespace yasca {

enum class SeedStrategy { DegreeExtremes, Random, All };

SeedStrategy parse_seed_strategy(std::string_view name);
std::string_view to_string(SeedStrategy s);

struct SeedConfig {
    SeedStrategy strategy = SeedStrategy::DegreeExtremes;
    double p_high = 0.25;  // fraction of highest-degree nodes
    double p_low = 0.25;   // fraction of lowest-degree nodes
    std::optional<std::size_t> k;  // node count for the random strategy
    std::uint64_t rng_seed = 0;
};

/// Distinct node indices in ascending order.
using SeedSet = std::vector<NodeId>;

/// Picks the seed nodes.
///
/// degree-extremes takes ceil(p_high * n) nodes by descending weighted degree
/// and ceil(p_low * n) by ascending degree, ties broken by ascending index;
/// the two slices may overlap and are merged. random draws k distinct nodes
/// with the seeded generator. all returns every node.
SeedSet select_seeds(const Graph& g, const SeedConfig& cfg);

}  // namespace yasca
