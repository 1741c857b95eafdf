#pragma once

#include <cstdint>
#include <vector>

#include "yasca/graph.hpp"
#include "yasca/partition.hpp"

namespace yasca {

struct LouvainConfig {
    std::uint64_t rng_seed = 0;
    std::size_t max_passes = 50;
    double min_gain = 1e-7;  // a pass gaining no more than this ends the run
};

struct LouvainResult {
    Partition partition;  // over the input graph's nodes, normalized
    double modularity = 0.0;  // tracked on the aggregated graph
    std::vector<double> pass_modularity;  // after each pass that moved nodes
};

/// Newman-Girvan weighted modularity, sum_c [ e_c / m - (d_c / 2m)^2 ], with
/// self-loops counted once in e_c. Throws when m = 0.
double modularity(const Graph& g, const Partition& p);

/// Sums the original-graph edges of g that aggregate communities, for tests
/// and for the aggregation step itself. Node c of the result is community c.
Graph aggregate(const Graph& g, const Partition& p);

/// Louvain modularity optimization.
///
/// Each pass sweeps the nodes in a seeded shuffled order, moving each one to
/// the neighboring community with the largest strictly positive gain (equal
/// gains go to the smaller community id), until a sweep moves nothing; the
/// communities then become the nodes of the next pass. Stops when a pass
/// moves nothing, gains at most min_gain, or max_passes is reached. A graph
/// without edges yields singletons. Disconnected graphs need no special
/// handling: isolated nodes never gain by moving.
LouvainResult louvain(const Graph& g, const LouvainConfig& cfg = {});

}  // namespace yasca
