#include "yasca/graph_io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "yasca/error.hpp"

namespace yasca {

namespace {

constexpr const char* kStage = "graph-core";

std::optional<double> parse_double(std::string_view s) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return value;
}

std::string at_line(std::size_t line, const std::string& msg) {
    return "line " + std::to_string(line) + ": " + msg;
}

}  // namespace

Graph load_edge_list(std::istream& in, const LoadOptions& opts) {
    GraphBuilder builder;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream fields(line);
        std::vector<std::string> tokens;
        for (std::string tok; fields >> tok;) tokens.push_back(std::move(tok));
        if (tokens.empty() || tokens.front().starts_with('#')) continue;
        if (tokens.size() != 2 && tokens.size() != 3) {
            throw data_error(kStage, at_line(line_no, "expected 'u v' or 'u v w', got " +
                                                          std::to_string(tokens.size()) + " fields"));
        }
        double w = 1.0;
        if (tokens.size() == 3) {
            auto parsed = parse_double(tokens[2]);
            if (!parsed) throw data_error(kStage, at_line(line_no, "non-numeric weight '" + tokens[2] + "'"));
            if (!(*parsed > 0.0)) throw data_error(kStage, at_line(line_no, "weight must be > 0"));
            w = *parsed;
        }
        if (tokens[0] == tokens[1] && !opts.allow_self_loops) {
            throw data_error(kStage, at_line(line_no, "self-loop on '" + tokens[0] +
                                                          "' (pass --allow-self-loops to keep it)"));
        }
        const NodeId u = builder.add_node(tokens[0]);
        const NodeId v = builder.add_node(tokens[1]);
        if (builder.has_edge(u, v)) {
            throw data_error(kStage, at_line(line_no, "duplicate edge " + tokens[0] + " " + tokens[1]));
        }
        try {
            builder.add_edge(u, v, w);
        } catch (const Error& e) {
            throw data_error(kStage, at_line(line_no, e.what()));
        }
    }
    return std::move(builder).build();
}

namespace {

// GML is a sequence of key/value pairs where a value is a number, a quoted
// string, or a bracketed list of further pairs.
struct GmlToken {
    enum Kind { Word, String, Open, Close, End } kind;
    std::string text;
    std::size_t line;
};

class GmlLexer {
public:
    explicit GmlLexer(std::istream& in) {
        std::ostringstream ss;
        ss << in.rdbuf();
        text_ = ss.str();
    }

    GmlToken next() {
        skip_space();
        if (pos_ >= text_.size()) return {GmlToken::End, {}, line_};
        const char c = text_[pos_];
        if (c == '[') return ++pos_, GmlToken{GmlToken::Open, "[", line_};
        if (c == ']') return ++pos_, GmlToken{GmlToken::Close, "]", line_};
        if (c == '"') {
            const std::size_t start_line = line_;
            std::string s;
            ++pos_;
            while (pos_ < text_.size() && text_[pos_] != '"') {
                if (text_[pos_] == '\n') ++line_;
                s.push_back(text_[pos_++]);
            }
            if (pos_ >= text_.size()) {
                throw data_error(kStage, at_line(start_line, "unterminated string in GML"));
            }
            ++pos_;
            return {GmlToken::String, std::move(s), start_line};
        }
        std::string w;
        while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
               text_[pos_] != '[' && text_[pos_] != ']' && text_[pos_] != '"') {
            w.push_back(text_[pos_++]);
        }
        return {GmlToken::Word, std::move(w), line_};
    }

private:
    void skip_space() {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == '\n') {
                ++line_;
                ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    std::string text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
};

struct GmlRecord {
    std::map<std::string, GmlToken> scalars;
    std::size_t line = 0;
};

// Skips a list whose opening bracket has already been consumed.
void skip_list(GmlLexer& lex, std::size_t open_line) {
    int depth = 1;
    while (depth > 0) {
        const GmlToken t = lex.next();
        if (t.kind == GmlToken::End) throw data_error(kStage, at_line(open_line, "unbalanced brackets in GML"));
        if (t.kind == GmlToken::Open) ++depth;
        if (t.kind == GmlToken::Close) --depth;
    }
}

// Reads "key value" pairs up to the closing bracket; nested lists are dropped.
GmlRecord read_record(GmlLexer& lex, std::size_t open_line) {
    GmlRecord rec;
    rec.line = open_line;
    for (;;) {
        GmlToken key = lex.next();
        if (key.kind == GmlToken::Close) return rec;
        if (key.kind == GmlToken::End) throw data_error(kStage, at_line(open_line, "unbalanced brackets in GML"));
        if (key.kind != GmlToken::Word) throw data_error(kStage, at_line(key.line, "expected a key in GML"));
        GmlToken value = lex.next();
        if (value.kind == GmlToken::Open) {
            skip_list(lex, value.line);
        } else if (value.kind == GmlToken::Word || value.kind == GmlToken::String) {
            rec.scalars.insert_or_assign(key.text, std::move(value));
        } else {
            throw data_error(kStage, at_line(key.line, "missing value for GML key '" + key.text + "'"));
        }
    }
}

}  // namespace

Graph load_gml(std::istream& in, const LoadOptions& opts) {
    GmlLexer lex(in);
    std::vector<GmlRecord> nodes;
    std::vector<GmlRecord> edges;
    bool saw_graph = false;

    for (;;) {
        GmlToken key = lex.next();
        if (key.kind == GmlToken::End) break;
        if (key.kind == GmlToken::Close) throw data_error(kStage, at_line(key.line, "unbalanced brackets in GML"));
        if (key.kind != GmlToken::Word) throw data_error(kStage, at_line(key.line, "expected a key in GML"));
        GmlToken value = lex.next();
        if (value.kind == GmlToken::End) throw data_error(kStage, at_line(key.line, "missing value for '" + key.text + "'"));
        if (value.kind != GmlToken::Open) continue;
        if (key.text != "graph") {
            skip_list(lex, value.line);
            continue;
        }
        saw_graph = true;
        for (;;) {
            GmlToken k = lex.next();
            if (k.kind == GmlToken::Close) break;
            if (k.kind == GmlToken::End) throw data_error(kStage, at_line(value.line, "unbalanced brackets in GML"));
            if (k.kind != GmlToken::Word) throw data_error(kStage, at_line(k.line, "expected a key in GML"));
            GmlToken v = lex.next();
            if (v.kind == GmlToken::End) throw data_error(kStage, at_line(k.line, "unbalanced brackets in GML"));
            if (v.kind != GmlToken::Open) continue;
            if (k.text == "node") {
                nodes.push_back(read_record(lex, v.line));
            } else if (k.text == "edge") {
                edges.push_back(read_record(lex, v.line));
            } else {
                skip_list(lex, v.line);
            }
        }
    }
    if (!saw_graph) throw data_error(kStage, "no 'graph [ ... ]' block in GML");

    GraphBuilder builder;
    std::map<std::string, NodeId> by_id;
    for (const GmlRecord& rec : nodes) {
        auto id = rec.scalars.find("id");
        if (id == rec.scalars.end()) throw data_error(kStage, at_line(rec.line, "node without id"));
        if (by_id.contains(id->second.text)) {
            throw data_error(kStage, at_line(rec.line, "duplicate node id " + id->second.text));
        }
        auto label = rec.scalars.find("label");
        const std::string& name = label != rec.scalars.end() ? label->second.text : id->second.text;
        const std::size_t before = builder.node_count();
        const NodeId node = builder.add_node(name);
        if (node != before) throw data_error(kStage, at_line(rec.line, "duplicate node label '" + name + "'"));
        by_id.emplace(id->second.text, node);
    }

    for (const GmlRecord& rec : edges) {
        auto endpoint = [&](const char* field) {
            auto it = rec.scalars.find(field);
            if (it == rec.scalars.end()) {
                throw data_error(kStage, at_line(rec.line, std::string("edge without ") + field));
            }
            auto node = by_id.find(it->second.text);
            if (node == by_id.end()) {
                throw data_error(kStage, at_line(rec.line, "edge references unknown node id " + it->second.text));
            }
            return node->second;
        };
        const NodeId u = endpoint("source");
        const NodeId v = endpoint("target");
        double w = 1.0;
        if (auto it = rec.scalars.find("value"); it != rec.scalars.end()) {
            auto parsed = parse_double(it->second.text);
            if (it->second.kind != GmlToken::Word || !parsed) {
                throw data_error(kStage, at_line(rec.line, "non-numeric edge value '" + it->second.text + "'"));
            }
            if (!(*parsed > 0.0)) throw data_error(kStage, at_line(rec.line, "edge value must be > 0"));
            w = *parsed;
        }
        if (u == v && !opts.allow_self_loops) {
            throw data_error(kStage, at_line(rec.line, "self-loop (pass --allow-self-loops to keep it)"));
        }
        if (builder.has_edge(u, v)) throw data_error(kStage, at_line(rec.line, "duplicate edge"));
        builder.add_edge(u, v, w);
    }
    return std::move(builder).build();
}

Graph load_graph(const std::filesystem::path& path, const LoadOptions& opts) {
    std::ifstream in(path);
    if (!in) throw data_error(kStage, "cannot open '" + path.string() + "'");
    if (path.extension() == ".gml") return load_gml(in, opts);
    return load_edge_list(in, opts);
}

void write_edge_list(std::ostream& out, const Graph& g) {
    char buf[64];
    g.for_each_edge([&](NodeId u, NodeId v, double w) {
        auto [end, ec] = std::to_chars(buf, buf + sizeof buf, w);
        out << g.label(u) << ' ' << g.label(v) << ' ' << std::string_view(buf, static_cast<std::size_t>(end - buf))
            << '\n';
    });
}

}  // namespace yasca
