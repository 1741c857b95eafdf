#pragma once

#include <vector>

#include "yasca/graph.hpp"

namespace yasca {

/// One seed's ego-centred community; its complement is the second block.
struct Bipartition {
    NodeId seed = 0;
    std::vector<NodeId> community;  // ascending, contains seed

    friend bool operator==(const Bipartition&, const Bipartition&) = default;
};

}  // namespace yasca
