#include "yasca/consensus.hpp"

#include <algorithm>

#include "yasca/error.hpp"
#include "yasca/kernels.hpp"

namespace yasca {

namespace {

constexpr const char* kStage = "consensus";

void validate(std::size_t n, std::span<const Bipartition> bips) {
    for (const Bipartition& b : bips) {
        if (b.community.empty()) throw invariant_error(kStage, "empty community");
        if (!std::is_sorted(b.community.begin(), b.community.end()) ||
            std::adjacent_find(b.community.begin(), b.community.end()) != b.community.end()) {
            throw invariant_error(kStage, "community members must be strictly ascending");
        }
        if (b.community.back() >= n) throw invariant_error(kStage, "community member out of range");
        if (!std::binary_search(b.community.begin(), b.community.end(), b.seed)) {
            throw invariant_error(kStage, "seed missing from its own community");
        }
    }
}

bool contains(const Bipartition& b, NodeId u) {
    return std::binary_search(b.community.begin(), b.community.end(), u);
}

// Word-major membership bits: bit (i % 64) of word (i / 64) in node v's row
// is set when v belongs to community i.
std::vector<std::uint64_t> membership_bits(std::size_t n, std::span<const Bipartition> bips, std::size_t words) {
    std::vector<std::uint64_t> bits(words * n, 0);
    for (std::size_t i = 0; i < bips.size(); ++i) {
        const std::uint64_t mask = std::uint64_t{1} << (i % 64);
        for (NodeId v : bips[i].community) bits[(i / 64) * n + v] |= mask;
    }
    return bits;
}

// Calls row(u, counts) for every u with counts[j] for v = u + 1 + j.
template <class Row>
void dense_rows(std::size_t n, std::span<const Bipartition> bips, CoMembershipMode mode, Row&& row) {
    const std::size_t words = (bips.size() + 63) / 64;
    const std::vector<std::uint64_t> bits = membership_bits(n, bips, words);
    const kernels::BitMatrixView view{bits, n, words};
    const auto total = static_cast<std::uint32_t>(bips.size());
    std::vector<std::uint32_t> buf(n);
    for (std::size_t u = 0; u + 1 < n; ++u) {
        std::span<std::uint32_t> out(buf.data(), n - u - 1);
        if (mode == CoMembershipMode::CommunityOnly) {
            kernels::pair_popcount(view, u, u + 1, kernels::BitOp::And, out);
        } else {
            kernels::pair_popcount(view, u, u + 1, kernels::BitOp::Xor, out);
            for (auto& c : out) c = total - c;
        }
        row(u, std::span<const std::uint32_t>(out));
    }
}

}  // namespace

CoMembershipMode parse_co_membership_mode(std::string_view name) {
    if (name == "both-clusters") return CoMembershipMode::BothClusters;
    if (name == "community-only") return CoMembershipMode::CommunityOnly;
    throw usage_error(kStage, "unknown co-membership mode '" + std::string(name) + "'");
}

std::string_view to_string(CoMembershipMode mode) {
    return mode == CoMembershipMode::BothClusters ? "both-clusters" : "community-only";
}

std::uint32_t co_membership_count(std::span<const Bipartition> bips, std::size_t n, NodeId u, NodeId v,
                                  CoMembershipMode mode) {
    if (u == v) throw usage_error(kStage, "co-membership of a node with itself is undefined");
    if (u >= n || v >= n) throw usage_error(kStage, "node index out of range");
    std::uint32_t count = 0;
    for (const Bipartition& b : bips) {
        const bool in_u = contains(b, u);
        const bool in_v = contains(b, v);
        if (in_u && in_v) {
            ++count;
        } else if (mode == CoMembershipMode::BothClusters && !in_u && !in_v) {
            ++count;
        }
    }
    return count;
}

std::size_t PairCounts::index(std::size_t n, std::size_t u, std::size_t v) {
    // Rows u = 0..n-2 hold n-1-u entries each.
    return u * (2 * n - u - 1) / 2 + (v - u - 1);
}

std::uint32_t PairCounts::at(NodeId u, NodeId v) const {
    if (u == v || u >= nodes || v >= nodes) throw usage_error(kStage, "invalid pair");
    if (u > v) std::swap(u, v);
    return counts[index(nodes, u, v)];
}

PairCounts count_co_memberships(std::size_t n, std::span<const Bipartition> bips, CoMembershipMode mode,
                                CountRoute route) {
    validate(n, bips);
    PairCounts pc;
    pc.nodes = n;
    pc.total = static_cast<std::uint32_t>(bips.size());
    pc.counts.assign(n < 2 ? 0 : n * (n - 1) / 2, 0);

    if (route == CountRoute::Sparse) {
        if (mode != CoMembershipMode::CommunityOnly) {
            throw usage_error(kStage, "sparse counting supports community-only mode");
        }
        for (const Bipartition& b : bips) {
            const auto& c = b.community;
            for (std::size_t i = 0; i < c.size(); ++i) {
                for (std::size_t j = i + 1; j < c.size(); ++j) ++pc.counts[PairCounts::index(n, c[i], c[j])];
            }
        }
        return pc;
    }

    dense_rows(n, bips, mode, [&](std::size_t u, std::span<const std::uint32_t> row) {
        std::copy(row.begin(), row.end(), pc.counts.begin() + static_cast<std::ptrdiff_t>(PairCounts::index(n, u, u + 1)));
    });
    return pc;
}

Graph build_consensus(std::span<const std::string> labels, std::span<const Bipartition> bips,
                      const ConsensusConfig& cfg) {
    if (bips.empty()) throw data_error(kStage, "no bipartitions to combine");
    if (!(cfg.tau >= 0.0 && cfg.tau <= 1.0)) throw usage_error(kStage, "tau must lie in [0, 1]");
    const std::size_t n = labels.size();
    validate(n, bips);

    GraphBuilder builder(std::vector<std::string>(labels.begin(), labels.end()));
    const double total = static_cast<double>(bips.size());
    auto keep = [&](NodeId u, NodeId v, std::uint32_t count) {
        if (count == 0) return;
        const double w = static_cast<double>(count) / total;
        if (w >= cfg.tau) builder.add_edge(u, v, w);
    };

    // Community-only counts are zero outside the communities' pairs, so
    // walking those pairs is cheaper once communities are small.
    std::size_t sparse_work = 0;
    for (const Bipartition& b : bips) sparse_work += b.community.size() * b.community.size() / 2;
    const std::size_t dense_work = n * n / 2 * ((bips.size() + 63) / 64);

    if (cfg.mode == CoMembershipMode::CommunityOnly && sparse_work < dense_work) {
        const PairCounts pc = count_co_memberships(n, bips, cfg.mode, CountRoute::Sparse);
        for (NodeId u = 0; u + 1 < n; ++u) {
            for (NodeId v = u + 1; v < n; ++v) keep(u, v, pc.counts[PairCounts::index(n, u, v)]);
        }
    } else {
        dense_rows(n, bips, cfg.mode, [&](std::size_t u, std::span<const std::uint32_t> row) {
            for (std::size_t j = 0; j < row.size(); ++j) {
                keep(static_cast<NodeId>(u), static_cast<NodeId>(u + 1 + j), row[j]);
            }
        });
    }
    return std::move(builder).build();
}

}  // namespace yasca
