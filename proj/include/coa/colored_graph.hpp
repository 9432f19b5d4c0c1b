#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "coa/class_vector.hpp"

namespace coa {

using VertexId = int;
using EdgeId = int;

struct Vertex {
  std::vector<double> position;  // embedding used by the heuristics
  ClassId vclass = 1;
};

/**
 * One undirected edge with its cheap estimates and the memoized result of the
 * expensive true evaluation. Directed arcs in the adjacency lists reference
 * this shared record, so both directions pay for evaluation once.
 */
struct EdgeRecord {
  VertexId u = -1;
  VertexId v = -1;
  double weight_estimate = 0.0;          // c_hat
  bool evaluated = false;
  bool declared = false;                 // true values fixed by the input file
  double weight_true = 0.0;
  ClassId class_true = 0;
};

struct Arc {
  VertexId to = -1;
  EdgeId edge = -1;
};

/// Distance metric over vertex positions. Wrap > 0 in a dimension means the
/// coordinate lives on a circle of that period (joint angles); scale weights
/// each dimension (downstream link lengths for arm graphs).
struct Metric {
  enum class Kind { Euclidean, WeightedWrappedL1 };
  Kind kind = Kind::Euclidean;
  std::vector<double> wrap;   // per-dim period, empty or 0 = unbounded
  std::vector<double> scale;  // per-dim weight, empty = all 1

  double distance(const std::vector<double>& a, const std::vector<double>& b) const;
};

// True edge evaluation provided by a world: (weight, class) for endpoints (u,v).
using EdgeEvaluator = std::function<std::pair<double, ClassId>(VertexId, VertexId)>;
// Dynamic vertex classification (belief-backed worlds).
using VertexClassProvider = std::function<ClassId(VertexId)>;
// Admissible class-to-go estimate theta_hat(v, goal).
using ThetaHeuristic = std::function<ClassVector(VertexId, VertexId)>;

struct GraphError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class ColoredGraph {
public:
  ColoredGraph(int num_vertex_classes, int num_edge_classes);

  ColoredGraph(const ColoredGraph&) = delete;
  ColoredGraph& operator=(const ColoredGraph&) = delete;
  ColoredGraph(ColoredGraph&&) = default;
  ColoredGraph& operator=(ColoredGraph&&) = default;

  int num_vertex_classes() const { return num_vertex_classes_; }
  int num_edge_classes() const { return num_edge_classes_; }
  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  VertexId add_vertex(std::vector<double> position, ClassId vclass);
  // Adds one undirected edge (two arcs sharing a record).
  EdgeId add_edge(VertexId u, VertexId v);
  EdgeId add_declared_edge(VertexId u, VertexId v, double weight, ClassId cls);

  const Vertex& vertex(VertexId v) const;
  const EdgeRecord& edge(EdgeId e) const;
  const std::vector<Arc>& outgoing(VertexId v) const;

  ClassId vertex_class(VertexId v) const;
  void set_vertex_class(VertexId v, ClassId cls);

  // Cheap admissible estimates: (metric endpoint distance, max endpoint class).
  std::pair<double, ClassId> estimate_edge(EdgeId e) const;

  // True evaluation, memoized per undirected edge. Thread-safe.
  std::pair<double, ClassId> evaluate_edge(EdgeId e);

  double heuristic_cost_to_go(VertexId v, VertexId goal) const;
  ClassVector heuristic_class_to_go(VertexId v, VertexId goal) const;

  // Distinct edges evaluated through the (non-declared) evaluator so far.
  long evaluation_count() const { return eval_count_; }

  // Forgets lazily evaluated results (declared edges keep theirs). Used
  // between replans when the belief behind the evaluator has changed.
  void reset_evaluations();

  void set_evaluator(EdgeEvaluator ev) { evaluator_ = std::move(ev); }
  void set_class_provider(VertexClassProvider p) { class_provider_ = std::move(p); }
  void set_theta_heuristic(ThetaHeuristic h) { theta_heuristic_ = std::move(h); }
  void set_metric(Metric m) { metric_ = std::move(m); }
  const Metric& metric() const { return metric_; }

private:
  void check_vertex(VertexId v) const;

  int num_vertex_classes_;
  int num_edge_classes_;
  std::vector<Vertex> vertices_;
  std::vector<EdgeRecord> edges_;
  std::vector<std::vector<Arc>> adjacency_;
  Metric metric_;
  EdgeEvaluator evaluator_;
  VertexClassProvider class_provider_;
  ThetaHeuristic theta_heuristic_;
  long eval_count_ = 0;
  std::unique_ptr<std::mutex> eval_mutex_;
};

// Evaluated class/length summary of an explicit vertex list. Forces
// evaluation of every edge on the path. A path of one vertex (or none) has
// the zero signature.
PathSignature path_signature(const std::vector<VertexId>& path, ColoredGraph& g,
                             const OrderMode& mode = {});

// Locates the connecting edge between adjacent vertices; throws GraphError
// if none exists.
EdgeId find_edge(const ColoredGraph& g, VertexId u, VertexId v);

}  // namespace coa
