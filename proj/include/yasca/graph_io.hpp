#pragma once

#include <filesystem>
#include <iosfwd>

#include "yasca/graph.hpp"

namespace yasca {

struct LoadOptions {
    /// Benchmark networks are simple graphs, so "u u" lines are rejected
    /// unless this is set.
    bool allow_self_loops = false;
};

/// Whitespace-separated "u v" or "u v w" lines; '#' starts a comment line.
/// Labels get dense indices in order of first appearance. Errors carry the
/// offending line number.
Graph load_edge_list(std::istream& in, const LoadOptions& opts = {});

/// Tolerant GML subset: graph [ node [ id N label "..." ] edge [ source N
/// target N value W ] ]. Unknown keys and nested lists are skipped.
Graph load_gml(std::istream& in, const LoadOptions& opts = {});

/// Dispatches on extension: ".gml" is GML, anything else an edge list.
Graph load_graph(const std::filesystem::path& path, const LoadOptions& opts = {});

/// Writes "u v w" lines in canonical edge order, weights printed so that
/// they reload bit-exactly.
void write_edge_list(std::ostream& out, const Graph& g);

}  // namespace yasca
