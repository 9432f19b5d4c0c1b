#pragma once

#include <functional>
#include <set>
#include <vector>

#include "coa/colored_graph.hpp"

namespace coa {

enum class PlanStatus { Found, NoPath, Aborted };

struct SearchStats {
  long pops = 0;
  long evaluations = 0;
  long enqueues = 0;
  double runtime_sec = 0.0;
};

struct PlanResult {
  PlanStatus status = PlanStatus::NoPath;
  std::vector<VertexId> path;  // start first; single vertex when start == goal
  PathSignature signature;
  SearchStats stats;
  // k1 snapshots of entries whose pop triggered a (first) true evaluation;
  // filled only when SearchOptions::trace_pops is set.
  std::vector<ClassVector> evaluated_k1;
  // Final parent pointers (-1 = unreached/root), for tree rendering.
  std::vector<VertexId> tree_parent;
};

/// Parent-pointer tree rooted at the start with per-vertex cost-to-come and
/// path-class labels.
struct SearchTree {
  std::vector<VertexId> parent;   // -1 = none
  std::vector<double> g;          // +inf until reached
  std::vector<ClassVector> theta; // TOP until reached

  bool in_tree(VertexId v) const { return !theta[v].is_top(); }
};

struct QueueEntry {
  QueueKey key;
  VertexId from = -1;
  VertexId to = -1;
  EdgeId edge = -1;   // -1 for the injected goal self edge
  int label = -1;     // source label in the engine's arena (internal)
};

/// Min-priority queue over QueueEntry with the four-key comparison and a
/// deterministic (child id, parent id) tie-break. Keys are snapshots taken at
/// enqueue time; duplicates are allowed.
class EdgeQueue {
public:
  explicit EdgeQueue(OrderMode mode) : mode_(mode) {}
  void push(QueueEntry e);
  QueueEntry pop();
  bool empty() const { return heap_.empty(); }
  size_t size() const { return heap_.size(); }
  const std::vector<QueueEntry>& entries() const { return heap_; }

private:
  bool before(const QueueEntry& a, const QueueEntry& b) const;
  OrderMode mode_;
  std::vector<QueueEntry> heap_;
};

struct SearchSnapshot {
  const SearchTree& tree;
  const std::vector<QueueEntry>& queue;
  long pops;
};

struct SearchOptions {
  OrderMode order_mode;
  // Edges whose estimated or true class lands here are never enqueued or
  // accepted. The simulator uses {3} (infeasible); library default is empty.
  std::set<ClassId> forbidden_classes;
  long max_pops = 10'000'000;
  bool use_cost_heuristic = true;   // h_hat = metric distance, else 0
  bool check_invariants = false;    // verify tree labels after every pop
  bool trace_pops = false;
  // Called once per iteration before the pop; for instrumented tests.
  std::function<void(const SearchSnapshot&)> inspect;
};

// Class-ordered search: returns the path minimizing (theta, length) under
// opts.order_mode over paths avoiding the forbidden classes. Terminates on
// popping the trivial goal self edge.
PlanResult coa_star(ColoredGraph& g, VertexId start, VertexId goal,
                    const SearchOptions& opts = {});

struct AStarOptions {
  std::set<ClassId> blocked_classes = {3};
  long max_pops = 10'000'000;
  bool use_cost_heuristic = true;
  bool trace_pops = false;
};

// Length-only baseline on the same lazy edge-queue skeleton: classes are
// ignored for ordering, blocked classes are impassable, everything else
// (unknown included) is traversable. The reported signature still carries
// the full class breakdown of the returned path.
PlanResult astar(ColoredGraph& g, VertexId start, VertexId goal,
                 const AStarOptions& opts = {});

// Reversed parent chain, start first. Throws GraphError when v is unreached.
std::vector<VertexId> extract_path(const SearchTree& tree, VertexId v);

}  // namespace coa
