#include "yasca/partition.hpp"

#include <unordered_map>

namespace yasca {

Partition Partition::from_labels(std::span<const CommunityId> labels) {
    Partition p;
    p.assignment.reserve(labels.size());
    std::unordered_map<CommunityId, CommunityId> renumber;
    for (CommunityId c : labels) {
        auto [it, inserted] = renumber.try_emplace(c, static_cast<CommunityId>(renumber.size()));
        p.assignment.push_back(it->second);
    }
    p.community_count = renumber.size();
    return p;
}

Partition Partition::singletons(std::size_t n) {
    Partition p;
    p.assignment.resize(n);
    for (std::size_t i = 0; i < n; ++i) p.assignment[i] = static_cast<CommunityId>(i);
    p.community_count = n;
    return p;
}

Partition Partition::single_community(std::size_t n) {
    Partition p;
    p.assignment.assign(n, 0);
    p.community_count = n > 0 ? 1 : 0;
    return p;
}

std::vector<std::vector<std::uint32_t>> Partition::communities() const {
    std::vector<std::vector<std::uint32_t>> out(community_count);
    for (std::size_t u = 0; u < assignment.size(); ++u) out[assignment[u]].push_back(static_cast<std::uint32_t>(u));
    return out;
}

}  // namespace yasca
