#pragma once

#include <optional>
#include <string>

#include "coa/colored_graph.hpp"

namespace coa {

struct GraphFile {
  ColoredGraph graph;
  std::optional<VertexId> start;
  std::optional<VertexId> goal;
};

// Parses the line-oriented graph format:
//   classes <K> <L>
//   vertex <id> <class> <x> [<y> ...]
//   edge <u> <v> [w=<weight>] [c=<class>]
//   start <id> / goal <id>
// '#' starts a comment. Edges without declared w/c stay unevaluated and need
// an evaluator attached before searching. Throws GraphError with a line
// number on malformed input.
GraphFile load_graph(const std::string& text);

GraphFile load_graph_file(const std::string& path);

}  // namespace coa
