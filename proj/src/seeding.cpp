#include "yasca/seeding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "yasca/error.hpp"
#include "yasca/rng.hpp"

namespace yasca {

namespace {

constexpr const char* kStage = "seeding";

std::size_t slice_size(double fraction, std::size_t n) {
    // A tiny slack keeps 0.25 * 36 at 9 despite representation error.
    const double raw = fraction * static_cast<double>(n);
    const auto count = static_cast<std::size_t>(std::ceil(raw - 1e-9));
    return std::min(count, n);
}

}  // namespace

SeedStrategy parse_seed_strategy(std::string_view name) {
    if (name == "degree-extremes") return SeedStrategy::DegreeExtremes;
    if (name == "random") return SeedStrategy::Random;
    if (name == "all") return SeedStrategy::All;
    throw usage_error(kStage, "unknown seed strategy '" + std::string(name) + "'");
}

std::string_view to_string(SeedStrategy s) {
    switch (s) {
        case SeedStrategy::DegreeExtremes: return "degree-extremes";
        case SeedStrategy::Random: return "random";
        case SeedStrategy::All: return "all";
    }
    return "?";
}

SeedSet select_seeds(const Graph& g, const SeedConfig& cfg) {
    const std::size_t n = g.node_count();
    if (n == 0) throw data_error(kStage, "graph has no nodes");

    std::vector<NodeId> order(n);
    std::iota(order.begin(), order.end(), NodeId{0});

    SeedSet seeds;
    switch (cfg.strategy) {
        case SeedStrategy::All:
            return order;

        case SeedStrategy::Random: {
            if (!cfg.k) throw usage_error(kStage, "random strategy needs seed.k");
            if (*cfg.k > n) {
                throw usage_error(kStage, "seed.k = " + std::to_string(*cfg.k) + " exceeds node count " +
                                              std::to_string(n));
            }
            Rng rng(derive_seed(cfg.rng_seed, 0));
            // Partial Fisher-Yates: the first k slots end up a uniform k-subset.
            for (std::size_t i = 0; i < *cfg.k; ++i) {
                const auto j = i + static_cast<std::size_t>(rng.below(n - i));
                std::swap(order[i], order[j]);
            }
            seeds.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(*cfg.k));
            break;
        }

        case SeedStrategy::DegreeExtremes: {
            if (!(cfg.p_high >= 0.0 && cfg.p_high <= 1.0) || !(cfg.p_low >= 0.0 && cfg.p_low <= 1.0)) {
                throw usage_error(kStage, "seed fractions must lie in [0, 1]");
            }
            auto by_degree = [&](bool descending) {
                std::vector<NodeId> ranked = order;
                std::stable_sort(ranked.begin(), ranked.end(), [&](NodeId a, NodeId b) {
                    return descending ? g.degree(a) > g.degree(b) : g.degree(a) < g.degree(b);
                });
                return ranked;
            };
            const auto top = by_degree(true);
            const auto bottom = by_degree(false);
            const std::size_t n_top = slice_size(cfg.p_high, n);
            const std::size_t n_bottom = slice_size(cfg.p_low, n);
            seeds.assign(top.begin(), top.begin() + static_cast<std::ptrdiff_t>(n_top));
            seeds.insert(seeds.end(), bottom.begin(), bottom.begin() + static_cast<std::ptrdiff_t>(n_bottom));
            break;
        }
    }
    std::sort(seeds.begin(), seeds.end());
    seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
    return seeds;
}

}  // namespace yasca
