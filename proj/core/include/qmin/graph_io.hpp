#pragma once

#include <string>
#include <string_view>

#include "qmin/graph.hpp"

namespace qmin {

/// Standard graph6 encoding (no header line).
std::string to_graph6(const Graph& g);
Graph from_graph6(std::string_view text);

/// {"n": n, "edges": [[u,v], ...]} with 1-based vertices.
std::string graph_to_json(const Graph& g);
Graph graph_from_json(std::string_view text);

/// Human-readable "n=5 edges=12,23,..." with 1-based vertices.
std::string describe(const Graph& g);

}  // namespace qmin
