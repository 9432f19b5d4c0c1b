#include "coa/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace coa {

namespace {

void dfs(const ColoredGraph& g, VertexId cur, VertexId goal,
         std::vector<char>& visited, std::vector<VertexId>& stack,
         std::vector<std::vector<VertexId>>& out, long cap) {
  if (cur == goal) {
    out.push_back(stack);
    if (static_cast<long>(out.size()) > cap)
      throw OracleEnumerationCap("path enumeration exceeded cap of " + std::to_string(cap));
    return;
  }
  for (const Arc& arc : g.outgoing(cur)) {
    if (arc.to == cur || visited[arc.to]) continue;
    visited[arc.to] = 1;
    stack.push_back(arc.to);
    dfs(g, arc.to, goal, visited, stack, out, cap);
    stack.pop_back();
    visited[arc.to] = 0;
  }
}

}  // namespace

std::vector<std::vector<VertexId>> enumerate_simple_paths(const ColoredGraph& g,
                                                          VertexId start, VertexId goal,
                                                          long cap) {
  if (start < 0 || start >= g.vertex_count() || goal < 0 || goal >= g.vertex_count())
    throw GraphError("invalid start/goal vertex");
  std::vector<std::vector<VertexId>> out;
  std::vector<char> visited(static_cast<size_t>(g.vertex_count()), 0);
  std::vector<VertexId> stack{start};
  visited[start] = 1;
  dfs(g, start, goal, visited, stack, out, cap);
  return out;
}

OracleResult oracle_optimal(ColoredGraph& g, VertexId start, VertexId goal,
                            const OrderMode& mode, const std::set<ClassId>& forbidden,
                            long cap) {
  OracleResult result;
  const auto paths = enumerate_simple_paths(g, start, goal, cap);

  for (const auto& path : paths) {
    bool blocked = false;
    for (size_t i = 0; i + 1 < path.size() && !blocked; ++i) {
      const auto [w, cls] = g.evaluate_edge(find_edge(g, path[i], path[i + 1]));
      (void)w;
      blocked = forbidden.count(cls) > 0;
    }
    if (blocked) continue;
    result.ranked.push_back(RankedPath{path, path_signature(path, g, mode)});
  }

  std::sort(result.ranked.begin(), result.ranked.end(),
            [&](const RankedPath& a, const RankedPath& b) {
              const auto ord = cv_compare(a.signature.theta, b.signature.theta, mode);
              if (ord != std::strong_ordering::equal)
                return ord == std::strong_ordering::less;
              if (std::abs(a.signature.length - b.signature.length) > kKeyTolerance)
                return a.signature.length < b.signature.length;
              if (a.signature.hops != b.signature.hops)
                return a.signature.hops < b.signature.hops;
              return a.path < b.path;
            });

  if (result.ranked.empty()) {
    result.best.status = PlanStatus::NoPath;
    result.best.signature.theta = ClassVector::zero(g.num_edge_classes());
  } else {
    result.best.status = PlanStatus::Found;
    result.best.path = result.ranked.front().path;
    result.best.signature = result.ranked.front().signature;
  }
  return result;
}

}  // namespace coa
