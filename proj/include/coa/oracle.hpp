#pragma once

#include <set>
#include <vector>

#include "coa/search.hpp"

namespace coa {

struct OracleEnumerationCap : GraphError {
  using GraphError::GraphError;
};

struct RankedPath {
  std::vector<VertexId> path;
  PathSignature signature;
};

struct OracleResult {
  PlanResult best;
  // Every surviving simple path, sorted by (theta, length, hops, vertex list).
  std::vector<RankedPath> ranked;
};

// Depth-first enumeration of all acyclic start->goal paths. Throws
// OracleEnumerationCap when more than `cap` paths exist.
std::vector<std::vector<VertexId>> enumerate_simple_paths(const ColoredGraph& g,
                                                          VertexId start, VertexId goal,
                                                          long cap = 1'000'000);

// Exhaustive ground truth: evaluates every enumerated path eagerly, drops
// paths containing a forbidden-class edge, and returns the minimum under
// (theta, length) with the same deterministic tie-break as the search.
// Never used inside the search; this is the correctness reference.
OracleResult oracle_optimal(ColoredGraph& g, VertexId start, VertexId goal,
                            const OrderMode& mode = {},
                            const std::set<ClassId>& forbidden = {},
                            long cap = 1'000'000);

}  // namespace coa
