#include "yasca/borda.hpp"

#include <algorithm>
#include <unordered_map>

#include "yasca/error.hpp"

namespace yasca {

std::vector<BordaScore> borda_aggregate(std::span<const std::vector<NodeId>> rankings) {
    constexpr const char* kStage = "local-community";
    if (rankings.empty()) throw usage_error(kStage, "borda needs at least one ranking");

    const std::size_t c = rankings.front().size();
    std::unordered_map<NodeId, std::size_t> slot;
    std::vector<BordaScore> scores;
    scores.reserve(c);
    for (NodeId u : rankings.front()) {
        if (!slot.try_emplace(u, scores.size()).second) throw usage_error(kStage, "duplicate candidate in ranking");
        scores.push_back({u, 0});
    }

    for (const auto& ranking : rankings) {
        if (ranking.size() != c) throw usage_error(kStage, "rankings over mismatched candidate sets");
        std::vector<bool> seen(c, false);
        for (std::size_t pos = 0; pos < c; ++pos) {
            auto it = slot.find(ranking[pos]);
            if (it == slot.end() || seen[it->second]) {
                throw usage_error(kStage, "rankings over mismatched candidate sets");
            }
            seen[it->second] = true;
            scores[it->second].score += c - (pos + 1);
        }
    }

    std::sort(scores.begin(), scores.end(), [](const BordaScore& a, const BordaScore& b) {
        return a.score != b.score ? a.score > b.score : a.node < b.node;
    });
    return scores;
}

}  // namespace yasca
