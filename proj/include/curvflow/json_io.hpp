#pragma once

#include <string>
#include <string_view>

#include "curvflow/calculus.hpp"
#include "curvflow/graph.hpp"

namespace curvflow {

/// Parses the JSON graph format
///   {"vertices": ["a", ...], "edges": [{"from": "a", "to": "b", "rate": 1.5}, ...]}
/// Throws ParseError with line/column for syntax problems and a description
/// for schema or validation problems.
Graph parse_graph(std::string_view text);

/// Vertices in declared order, edges sorted by (from, to); doubles use the
/// shortest representation that parses back to the same value. Ends with a
/// newline.
std::string serialize_graph(const Graph& g);

/// Parses {"vertex id": value, ...}; every vertex of g must appear exactly once.
VertexFunction parse_vertex_function(const Graph& g, std::string_view text);
std::string serialize_vertex_function(const Graph& g, const VertexFunction& f);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace curvflow
