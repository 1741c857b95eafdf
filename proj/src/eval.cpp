#include "yasca/eval.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "yasca/error.hpp"
#include "yasca/rng.hpp"

namespace yasca {

namespace {

constexpr const char* kStage = "eval";

double sorted_sum(std::vector<double>& terms) {
    std::sort(terms.begin(), terms.end());
    double total = 0.0;
    for (double t : terms) total += t;
    return total;
}

double entropy(const std::vector<std::size_t>& sizes, double n) {
    std::vector<double> terms;
    terms.reserve(sizes.size());
    for (std::size_t s : sizes) {
        if (s == 0) continue;
        const double p = static_cast<double>(s) / n;
        terms.push_back(-p * std::log(p));
    }
    return sorted_sum(terms);
}

std::vector<std::size_t> cluster_sizes(const Partition& p) {
    CommunityId max_id = 0;
    for (CommunityId c : p.assignment) max_id = std::max(max_id, c);
    std::vector<std::size_t> sizes(static_cast<std::size_t>(max_id) + 1, 0);
    for (CommunityId c : p.assignment) ++sizes[c];
    return sizes;
}

}  // namespace

double nmi(const Partition& a, const Partition& b) {
    if (a.size() != b.size()) throw data_error(kStage, "partitions cover different node counts");
    if (a.size() == 0) throw data_error(kStage, "partitions are empty");
    const double n = static_cast<double>(a.size());

    const auto size_a = cluster_sizes(a);
    const auto size_b = cluster_sizes(b);
    const double h_a = entropy(size_a, n);
    const double h_b = entropy(size_b, n);
    const bool flat_a = std::count_if(size_a.begin(), size_a.end(), [](std::size_t s) { return s > 0; }) == 1;
    const bool flat_b = std::count_if(size_b.begin(), size_b.end(), [](std::size_t s) { return s > 0; }) == 1;
    if (flat_a && flat_b) return 1.0;
    if (flat_a || flat_b) return 0.0;

    std::unordered_map<std::uint64_t, std::size_t> joint;
    for (std::size_t u = 0; u < a.size(); ++u) {
        ++joint[(static_cast<std::uint64_t>(a[u]) << 32) | b[u]];
    }
    std::vector<double> terms;
    terms.reserve(joint.size());
    for (const auto& [key, count] : joint) {
        const double n_ij = static_cast<double>(count);
        const double n_i = static_cast<double>(size_a[key >> 32]);
        const double n_j = static_cast<double>(size_b[key & 0xffffffffu]);
        terms.push_back((n_ij / n) * std::log((n * n_ij) / (n_i * n_j)));
    }
    const double mutual = sorted_sum(terms);
    const double score = mutual / std::sqrt(h_a * h_b);
    // Rounding can leave identical partitions a hair above 1 or independent
    // ones a hair below 0.
    return std::clamp(score, 0.0, 1.0);
}

Partition random_partition(std::size_t n, std::size_t k, std::uint64_t rng_seed) {
    if (k < 1 || k > n) {
        throw usage_error(kStage, "random partition needs 1 <= k <= n (k=" + std::to_string(k) +
                                      ", n=" + std::to_string(n) + ")");
    }
    Rng rng(derive_seed(rng_seed, 2));
    std::vector<CommunityId> labels(n);
    for (auto& c : labels) c = static_cast<CommunityId>(rng.below(k));
    return Partition::from_labels(labels);
}

LabeledPartition label_partition(const Partition& p, std::span<const std::string> node_labels) {
    if (p.size() != node_labels.size()) throw usage_error(kStage, "label list does not match partition length");
    LabeledPartition lp;
    lp.entries.reserve(p.size());
    for (std::size_t u = 0; u < p.size(); ++u) lp.entries.emplace_back(node_labels[u], std::to_string(p[u]));
    return lp;
}

Partition align_partition(const LabeledPartition& lp, std::span<const std::string> node_labels) {
    std::unordered_map<std::string, const std::string*> lookup;
    std::vector<std::string> duplicates;
    for (const auto& [node, community] : lp.entries) {
        if (!lookup.emplace(node, &community).second) duplicates.push_back(node);
    }
    if (!duplicates.empty()) {
        std::string msg = "node listed more than once:";
        for (const auto& d : duplicates) msg += " " + d;
        throw data_error(kStage, msg);
    }

    std::unordered_set<std::string> known(node_labels.begin(), node_labels.end());
    std::string missing;
    std::string extra;
    for (const std::string& label : node_labels) {
        if (!lookup.contains(label)) missing += " " + label;
    }
    for (const auto& [node, community] : lp.entries) {
        if (!known.contains(node)) extra += " " + node;
    }
    if (!missing.empty() || !extra.empty()) {
        std::string msg;
        if (!missing.empty()) msg += "nodes missing from the partition:" + missing;
        if (!extra.empty()) msg += std::string(msg.empty() ? "" : "; ") + "nodes not in the graph:" + extra;
        throw data_error(kStage, msg);
    }

    std::unordered_map<std::string, CommunityId> ids;
    std::vector<CommunityId> raw;
    raw.reserve(node_labels.size());
    for (const std::string& label : node_labels) {
        const std::string& community = *lookup.at(label);
        auto [it, inserted] = ids.try_emplace(community, static_cast<CommunityId>(ids.size()));
        raw.push_back(it->second);
    }
    return Partition::from_labels(raw);
}

LabeledPartition read_labeled_partition(std::istream& in) {
    LabeledPartition lp;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream fields(line);
        std::string node;
        std::string community;
        std::string rest;
        if (!(fields >> node) || node.starts_with('#')) continue;
        if (!(fields >> community) || (fields >> rest)) {
            throw data_error(kStage, "line " + std::to_string(line_no) + ": expected 'node<TAB>community'");
        }
        lp.entries.emplace_back(std::move(node), std::move(community));
    }
    return lp;
}

void write_labeled_partition(std::ostream& out, const LabeledPartition& lp) {
    for (const auto& [node, community] : lp.entries) out << node << '\t' << community << '\n';
}

}  // namespace yasca
