#include "yasca/config.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

#include "yasca/error.hpp"

namespace yasca {

namespace {

constexpr const char* kStage = "config";

std::string canonical_key(std::string_view key) {
    std::string out(key);
    const auto dot = out.find('.');
    for (std::size_t i = (dot == std::string::npos ? 0 : dot + 1); i < out.size(); ++i) {
        if (out[i] == '-') out[i] = '_';
    }
    if (dot == std::string::npos) {
        for (char& c : out) c = c == '-' ? '_' : c;
    }
    return out;
}

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

double parse_real(std::string_view key, std::string_view value) {
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
        throw usage_error(kStage, std::string(key) + ": expected a number, got '" + std::string(value) + "'");
    }
    return out;
}

std::uint64_t parse_unsigned(std::string_view key, std::string_view value) {
    std::uint64_t out = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
        throw usage_error(kStage, std::string(key) + ": expected a non-negative integer, got '" +
                                      std::string(value) + "'");
    }
    return out;
}

double parse_fraction(std::string_view key, std::string_view value) {
    const double f = parse_real(key, value);
    if (!(f >= 0.0 && f <= 1.0)) throw usage_error(kStage, std::string(key) + " must lie in [0, 1]");
    return f;
}

bool parse_bool(std::string_view key, std::string_view value) {
    if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
    if (value == "false" || value == "0" || value == "no" || value == "off") return false;
    throw usage_error(kStage, std::string(key) + ": expected true or false, got '" + std::string(value) + "'");
}

std::string format_real(double x) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, end);
}

std::vector<std::filesystem::path> split_paths(std::string_view value) {
    std::vector<std::filesystem::path> out;
    std::size_t start = 0;
    while (start <= value.size()) {
        const std::size_t comma = std::min(value.find(',', start), value.size());
        const std::string item = trim(value.substr(start, comma - start));
        if (!item.empty()) out.emplace_back(item);
        start = comma + 1;
    }
    return out;
}

}  // namespace

const std::vector<std::string>& known_keys() {
    static const std::vector<std::string> keys = {
        "graph",          "ground_truth",      "seed.strategy",     "seed.p_high",
        "seed.p_low",     "seed.k",            "seed.rng_seed",     "local.metrics",
        "local.accept",   "local.max_size",    "consensus.tau",     "consensus.mode",
        "louvain.rng_seed", "louvain.max_passes", "louvain.min_gain", "workers",
        "out",            "emit_plot_data",    "baseline_louvain",  "allow_self_loops",
    };
    return keys;
}

void apply_setting(RunConfig& cfg, std::string_view raw_key, std::string_view raw_value) {
    const std::string key = canonical_key(trim(raw_key));
    const std::string value = trim(raw_value);
    YascaConfig& y = cfg.yasca;

    if (key == "graph") {
        cfg.graph_paths = split_paths(value);
    } else if (key == "ground_truth") {
        cfg.ground_truth_paths = split_paths(value);
    } else if (key == "seed.strategy") {
        y.seed.strategy = parse_seed_strategy(value);
    } else if (key == "seed.p_high") {
        y.seed.p_high = parse_fraction(key, value);
    } else if (key == "seed.p_low") {
        y.seed.p_low = parse_fraction(key, value);
    } else if (key == "seed.k") {
        y.seed.k = static_cast<std::size_t>(parse_unsigned(key, value));
    } else if (key == "seed.rng_seed") {
        y.seed.rng_seed = parse_unsigned(key, value);
    } else if (key == "local.metrics") {
        y.local.metrics = parse_metrics(value);
    } else if (key == "local.accept") {
        y.local.accept = parse_accept_rule(value);
    } else if (key == "local.max_size") {
        y.local.max_size = static_cast<std::size_t>(parse_unsigned(key, value));
    } else if (key == "consensus.tau") {
        y.consensus.tau = parse_fraction(key, value);
    } else if (key == "consensus.mode") {
        y.consensus.mode = parse_co_membership_mode(value);
    } else if (key == "louvain.rng_seed") {
        y.louvain.rng_seed = parse_unsigned(key, value);
    } else if (key == "louvain.max_passes") {
        y.louvain.max_passes = static_cast<std::size_t>(parse_unsigned(key, value));
        if (y.louvain.max_passes == 0) throw usage_error(kStage, "louvain.max_passes must be > 0");
    } else if (key == "louvain.min_gain") {
        y.louvain.min_gain = parse_real(key, value);
        if (!(y.louvain.min_gain >= 0.0)) throw usage_error(kStage, "louvain.min_gain must be >= 0");
    } else if (key == "workers") {
        cfg.workers = static_cast<std::size_t>(parse_unsigned(key, value));
        if (cfg.workers == 0) throw usage_error(kStage, "workers must be >= 1");
    } else if (key == "out") {
        cfg.output_dir = value;
    } else if (key == "emit_plot_data") {
        cfg.emit_plot_data = parse_bool(key, value);
    } else if (key == "baseline_louvain") {
        cfg.baseline_louvain = parse_bool(key, value);
    } else if (key == "allow_self_loops") {
        cfg.allow_self_loops = parse_bool(key, value);
    } else {
        throw usage_error(kStage, "unknown key '" + std::string(raw_key) + "'");
    }
}

void load_config(RunConfig& cfg, std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string body = trim(line);
        if (body.empty() || body.front() == '#') continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw usage_error(kStage, "line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        try {
            apply_setting(cfg, body.substr(0, eq), body.substr(eq + 1));
        } catch (const Error& e) {
            throw usage_error(kStage, "line " + std::to_string(line_no) + ": " + e.what());
        }
    }
}

void load_config_file(RunConfig& cfg, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw usage_error(kStage, "cannot open config file '" + path.string() + "'");
    load_config(cfg, in);
}

std::vector<std::pair<std::string, std::string>> describe(const RunConfig& cfg) {
    const YascaConfig& y = cfg.yasca;
    return {
        {"seed.strategy", std::string(to_string(y.seed.strategy))},
        {"seed.p_high", format_real(y.seed.p_high)},
        {"seed.p_low", format_real(y.seed.p_low)},
        {"seed.k", y.seed.k ? std::to_string(*y.seed.k) : "none"},
        {"seed.rng_seed", std::to_string(y.seed.rng_seed)},
        {"local.metrics", metrics_to_string(y.local.metrics)},
        {"local.accept", std::string(to_string(y.local.accept))},
        {"local.max_size", std::to_string(y.local.max_size)},
        {"consensus.tau", format_real(y.consensus.tau)},
        {"consensus.mode", std::string(to_string(y.consensus.mode))},
        {"louvain.rng_seed", std::to_string(y.louvain.rng_seed)},
        {"louvain.max_passes", std::to_string(y.louvain.max_passes)},
        {"louvain.min_gain", format_real(y.louvain.min_gain)},
    };
}

}  // namespace yasca
