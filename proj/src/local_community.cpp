#include "yasca/local_community.hpp"

#include <algorithm>
#include <cctype>

#include "yasca/borda.hpp"
#include "yasca/error.hpp"

namespace yasca {

namespace {
constexpr const char* kStage = "local-community";
}

AcceptRule parse_accept_rule(std::string_view name) {
    if (name == "majority") return AcceptRule::Majority;
    if (name == "any") return AcceptRule::Any;
    if (name == "all") return AcceptRule::All;
    throw usage_error(kStage, "unknown acceptance rule '" + std::string(name) + "'");
}

std::string_view to_string(AcceptRule rule) {
    switch (rule) {
        case AcceptRule::Majority: return "majority";
        case AcceptRule::Any: return "any";
        case AcceptRule::All: return "all";
    }
    return "?";
}

std::vector<MetricId> parse_metrics(std::string_view list) {
    std::vector<MetricId> out;
    std::size_t start = 0;
    while (start <= list.size()) {
        const std::size_t comma = std::min(list.find(',', start), list.size());
        std::string tok(list.substr(start, comma - start));
        std::erase_if(tok, [](unsigned char c) { return std::isspace(c); });
        for (char& c : tok) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        MetricId id;
        if (tok == "r") {
            id = MetricId::R;
        } else if (tok == "m") {
            id = MetricId::M;
        } else if (tok == "l") {
            id = MetricId::L;
        } else {
            throw usage_error(kStage, "unknown local metric '" + tok + "' (expected r, m or l)");
        }
        if (std::find(out.begin(), out.end(), id) != out.end()) {
            throw usage_error(kStage, "metric '" + tok + "' listed twice");
        }
        out.push_back(id);
        start = comma + 1;
    }
    if (out.empty()) throw usage_error(kStage, "metric set must not be empty");
    return out;
}

std::string metrics_to_string(const std::vector<MetricId>& metrics) {
    std::string out;
    for (MetricId id : metrics) {
        if (!out.empty()) out += ',';
        out += "rml"[static_cast<int>(id)];
    }
    return out;
}

double metric_r(const CommunityMeasures& c) {
    const double denom = c.b_in + c.e_out;
    if (denom == 0.0) return 1.0;
    return c.b_in / denom;
}

double metric_m(const CommunityMeasures& c) {
    if (c.e_out == 0.0) return kUnbounded;
    return c.e_in / c.e_out;
}

double metric_l(const CommunityMeasures& c) {
    if (c.size == 0) return 0.0;
    const double l_in = 2.0 * c.e_in / static_cast<double>(c.size);
    if (l_in == 0.0) return 0.0;
    const double l_ex = c.boundary_size == 0 ? 0.0 : c.e_out / static_cast<double>(c.boundary_size);
    if (l_ex == 0.0) return kUnbounded;
    return l_in / l_ex;
}

double metric_value(MetricId id, const CommunityMeasures& c) {
    switch (id) {
        case MetricId::R: return metric_r(c);
        case MetricId::M: return metric_m(c);
        case MetricId::L: return metric_l(c);
    }
    return 0.0;
}

CommunityMeasures measure_community(const Graph& g, std::span<const NodeId> members) {
    std::vector<char> in(g.node_count(), 0);
    for (NodeId u : members) in[u] = 1;

    CommunityMeasures m;
    std::vector<char> boundary(g.node_count(), 0);
    for (NodeId u : members) {
        ++m.size;
        for (const Neighbor& nb : g.neighbors(u)) {
            if (!in[nb.node]) boundary[u] = 1;
        }
        m.boundary_size += boundary[u];
    }
    g.for_each_edge([&](NodeId u, NodeId v, double w) {
        if (in[u] && in[v]) {
            m.e_in += w;
            if (boundary[u] || boundary[v]) m.b_in += w;
        } else if (in[u] || in[v]) {
            m.e_out += w;
        }
    });
    return m;
}

LocalCommunityState::LocalCommunityState(const Graph& g, NodeId seed)
    : graph_(&g),
      in_community_(g.node_count(), 0),
      member_links_(g.node_count(), 0),
      member_weight_(g.node_count(), 0.0),
      scratch_(g.node_count(), 0) {
    if (seed >= g.node_count()) {
        throw usage_error(kStage, "seed index " + std::to_string(seed) + " out of range");
    }
    add(seed);
}

bool LocalCommunityState::is_interior(NodeId u) const {
    return in_community_[u] && member_links_[u] == graph_->neighbor_count(u);
}

bool LocalCommunityState::is_boundary(NodeId u) const {
    return in_community_[u] && member_links_[u] < graph_->neighbor_count(u);
}

std::vector<NodeId> LocalCommunityState::frontier() const {
    std::vector<NodeId> out;
    for (NodeId m : members_) {
        for (const Neighbor& nb : graph_->neighbors(m)) {
            if (!in_community_[nb.node]) out.push_back(nb.node);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

CommunityMeasures LocalCommunityState::evaluate_addition(NodeId u) const {
    double interior = 0.0;
    return evaluate_addition(u, interior);
}

CommunityMeasures LocalCommunityState::evaluate_addition(NodeId u, double& interior) const {
    const Graph& g = *graph_;
    const double self = g.self_loop_weight(u);
    const double k_in = member_weight_[u];
    const double k_total = g.degree(u) - 2.0 * self;

    CommunityMeasures next = measures_;
    next.size += 1;
    next.e_in += k_in + self;
    next.e_out += (k_total - k_in) - k_in;

    // Nodes that become interior once u joins: members whose only outside
    // neighbor is u, plus u itself if all its neighbors are already in C.
    std::vector<NodeId> turning;
    for (const Neighbor& nb : g.neighbors(u)) {
        const NodeId v = nb.node;
        if (in_community_[v] && member_links_[v] + 1 == g.neighbor_count(v)) turning.push_back(v);
    }
    const std::size_t members_turning = turning.size();
    const bool u_interior = member_links_[u] == g.neighbor_count(u);
    if (u_interior) turning.push_back(u);

    next.boundary_size = next.boundary_size - members_turning + (u_interior ? 0 : 1);

    interior = interior_weight_;
    for (NodeId x : turning) scratch_[x] = 1;
    for (NodeId x : turning) {
        interior += g.self_loop_weight(x);
        for (const Neighbor& nb : g.neighbors(x)) {
            if (scratch_[nb.node]) {
                if (nb.node > x) interior += nb.weight;
            } else if (is_interior(nb.node)) {
                interior += nb.weight;
            }
        }
    }
    for (NodeId x : turning) scratch_[x] = 0;

    next.b_in = next.e_in - interior;
    return next;
}

void LocalCommunityState::add(NodeId u) {
    if (in_community_[u]) throw invariant_error(kStage, "node already in community");
    if (members_.empty()) {
        // Seed: C = {u}. Only the self-loop is internal.
        const Graph& g = *graph_;
        const double self = g.self_loop_weight(u);
        measures_.size = 1;
        measures_.e_in = self;
        measures_.e_out = g.degree(u) - 2.0 * self;
        const bool interior = g.neighbor_count(u) == 0;
        measures_.boundary_size = interior ? 0 : 1;
        interior_weight_ = interior ? self : 0.0;
        measures_.b_in = measures_.e_in - interior_weight_;
    } else {
        double interior = 0.0;
        measures_ = evaluate_addition(u, interior);
        interior_weight_ = interior;
    }
    in_community_[u] = 1;
    members_.push_back(u);
    for (const Neighbor& nb : graph_->neighbors(u)) {
        member_links_[nb.node] += 1;
        member_weight_[nb.node] += nb.weight;
    }
}

namespace {

std::size_t improvements_needed(AcceptRule rule, std::size_t active) {
    switch (rule) {
        case AcceptRule::Majority: return active / 2 + 1;
        case AcceptRule::Any: return 1;
        case AcceptRule::All: return active;
    }
    return active;
}

}  // namespace

Bipartition expand_local_community(const Graph& g, NodeId seed, const LocalConfig& cfg,
                                   std::vector<ExpansionStep>* trace) {
    if (cfg.metrics.empty()) throw usage_error(kStage, "metric set must not be empty");
    LocalCommunityState state(g, seed);
    const std::size_t cap = cfg.max_size == 0 ? g.node_count() : cfg.max_size;
    const std::size_t needed = improvements_needed(cfg.accept, cfg.metrics.size());

    std::vector<std::vector<NodeId>> rankings(cfg.metrics.size());
    std::vector<std::array<double, kMetricCount>> values;

    while (state.measures().size < cap) {
        const std::vector<NodeId> frontier = state.frontier();
        if (frontier.empty()) break;

        values.assign(frontier.size(), {});
        for (std::size_t i = 0; i < frontier.size(); ++i) {
            const CommunityMeasures next = state.evaluate_addition(frontier[i]);
            for (MetricId id : cfg.metrics) values[i][static_cast<std::size_t>(id)] = metric_value(id, next);
        }

        std::vector<std::size_t> order(frontier.size());
        for (std::size_t k = 0; k < cfg.metrics.size(); ++k) {
            const auto slot = static_cast<std::size_t>(cfg.metrics[k]);
            for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
            // frontier is ascending, so a stable sort leaves ties in index order.
            std::stable_sort(order.begin(), order.end(),
                             [&](std::size_t a, std::size_t b) { return values[a][slot] > values[b][slot]; });
            rankings[k].resize(order.size());
            for (std::size_t i = 0; i < order.size(); ++i) rankings[k][i] = frontier[order[i]];
        }

        const BordaScore winner = borda_aggregate(rankings).front();
        const auto pos = static_cast<std::size_t>(
            std::lower_bound(frontier.begin(), frontier.end(), winner.node) - frontier.begin());

        std::size_t improved = 0;
        for (MetricId id : cfg.metrics) {
            if (values[pos][static_cast<std::size_t>(id)] > metric_value(id, state.measures())) ++improved;
        }
        if (improved < needed) break;

        state.add(winner.node);
        if (trace) trace->push_back({winner.node, winner.score, values[pos]});
    }

    Bipartition out;
    out.seed = seed;
    out.community = state.members();
    std::sort(out.community.begin(), out.community.end());
    return out;
}

}  // namespace yasca
