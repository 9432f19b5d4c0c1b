#include "coa/colored_graph.hpp"

#include <cmath>
#include <string>

namespace coa {

double Metric::distance(const std::vector<double>& a, const std::vector<double>& b) const {
  if (a.size() != b.size())
    throw GraphError("metric: dimension mismatch");
  double acc = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    double d = std::abs(a[i] - b[i]);
    if (i < wrap.size() && wrap[i] > 0.0) {
      d = std::fmod(d, wrap[i]);
      d = std::min(d, wrap[i] - d);
    }
    const double s = i < scale.size() ? scale[i] : 1.0;
    if (kind == Kind::Euclidean) {
      acc += (s * d) * (s * d);
    } else {
      acc += s * d;
    }
  }
  return kind == Kind::Euclidean ? std::sqrt(acc) : acc;
}

ColoredGraph::ColoredGraph(int num_vertex_classes, int num_edge_classes)
    : num_vertex_classes_(num_vertex_classes),
      num_edge_classes_(num_edge_classes),
      eval_mutex_(std::make_unique<std::mutex>()) {
  if (num_vertex_classes < 1 || num_edge_classes < num_vertex_classes)
    throw GraphError("class counts must satisfy 1 <= K <= L");
}

VertexId ColoredGraph::add_vertex(std::vector<double> position, ClassId vclass) {
  if (vclass < 1 || vclass > num_vertex_classes_)
    throw GraphError("vertex class out of range");
  if (!vertices_.empty() && vertices_.front().position.size() != position.size())
    throw GraphError("vertex position dimension mismatch");
  vertices_.push_back(Vertex{std::move(position), vclass});
  adjacency_.emplace_back();
  return static_cast<VertexId>(vertices_.size()) - 1;
}

EdgeId ColoredGraph::add_edge(VertexId u, VertexId v) {
  check_vertex(u);
  check_vertex(v);
  EdgeRecord rec;
  rec.u = u;
  rec.v = v;
  rec.weight_estimate = metric_.distance(vertices_[u].position, vertices_[v].position);
  const EdgeId id = static_cast<EdgeId>(edges_.size());
  edges_.push_back(rec);
  adjacency_[u].push_back(Arc{v, id});
  if (u != v) adjacency_[v].push_back(Arc{u, id});
  return id;
}

EdgeId ColoredGraph::add_declared_edge(VertexId u, VertexId v, double weight, ClassId cls) {
  if (weight < 0.0) throw GraphError("negative edge weight");
  if (cls < 1 || cls > num_edge_classes_) throw GraphError("edge class out of range");
  const EdgeId id = add_edge(u, v);
  EdgeRecord& rec = edges_[id];
  const ClassId endpoint_max = std::max(vertex_class(u), vertex_class(v));
  if (cls < endpoint_max)
    throw GraphError("edge class " + std::to_string(cls) + " below endpoint class " +
                     std::to_string(endpoint_max));
  // Keep the estimate a lower bound even if the declared weight is shorter
  // than the embedding distance.
  rec.weight_estimate = std::min(rec.weight_estimate, weight);
  rec.evaluated = true;
  rec.declared = true;
  rec.weight_true = weight;
  rec.class_true = cls;
  return id;
}

const Vertex& ColoredGraph::vertex(VertexId v) const {
  check_vertex(v);
  return vertices_[v];
}

const EdgeRecord& ColoredGraph::edge(EdgeId e) const {
  if (e < 0 || e >= edge_count()) throw GraphError("invalid edge id");
  return edges_[e];
}

const std::vector<Arc>& ColoredGraph::outgoing(VertexId v) const {
  check_vertex(v);
  return adjacency_[v];
}

ClassId ColoredGraph::vertex_class(VertexId v) const {
  check_vertex(v);
  if (class_provider_) return class_provider_(v);
  return vertices_[v].vclass;
}

void ColoredGraph::set_vertex_class(VertexId v, ClassId cls) {
  check_vertex(v);
  if (cls < 1 || cls > num_vertex_classes_) throw GraphError("vertex class out of range");
  vertices_[v].vclass = cls;
}

std::pair<double, ClassId> ColoredGraph::estimate_edge(EdgeId e) const {
  const EdgeRecord& rec = edge(e);
  const ClassId cls = std::max(vertex_class(rec.u), vertex_class(rec.v));
  return {rec.weight_estimate, cls};
}

std::pair<double, ClassId> ColoredGraph::evaluate_edge(EdgeId e) {
  if (e < 0 || e >= edge_count()) throw GraphError("invalid edge id");
  std::lock_guard<std::mutex> lock(*eval_mutex_);
  EdgeRecord& rec = edges_[e];
  if (rec.evaluated) return {rec.weight_true, rec.class_true};
  if (rec.u == rec.v) {
    // Trivial self edge: zero weight, the vertex's own class.
    rec.weight_true = 0.0;
    rec.class_true = vertex_class(rec.u);
  } else {
    if (!evaluator_) throw GraphError("edge has no declared values and no evaluator");
    auto [w, cls] = evaluator_(rec.u, rec.v);
    if (w < 0.0) throw GraphError("evaluator produced a negative weight");
    if (cls < 1 || cls > num_edge_classes_)
      throw GraphError("evaluator produced class out of range");
    rec.weight_true = w;
    rec.class_true = cls;
  }
  rec.evaluated = true;
  ++eval_count_;
  return {rec.weight_true, rec.class_true};
}

double ColoredGraph::heuristic_cost_to_go(VertexId v, VertexId goal) const {
  check_vertex(v);
  check_vertex(goal);
  if (v == goal) return 0.0;
  return metric_.distance(vertices_[v].position, vertices_[goal].position);
}

ClassVector ColoredGraph::heuristic_class_to_go(VertexId v, VertexId goal) const {
  check_vertex(v);
  check_vertex(goal);
  if (theta_heuristic_) return theta_heuristic_(v, goal);
  return ClassVector::zero(num_edge_classes_);
}

void ColoredGraph::reset_evaluations() {
  std::lock_guard<std::mutex> lock(*eval_mutex_);
  for (EdgeRecord& rec : edges_) {
    if (!rec.declared) {
      rec.evaluated = false;
      rec.weight_true = 0.0;
      rec.class_true = 0;
    }
  }
}

void ColoredGraph::check_vertex(VertexId v) const {
  if (v < 0 || v >= vertex_count())
    throw GraphError("unknown vertex " + std::to_string(v));
}

EdgeId find_edge(const ColoredGraph& g, VertexId u, VertexId v) {
  for (const Arc& arc : g.outgoing(u))
    if (arc.to == v) return arc.edge;
  throw GraphError("vertices " + std::to_string(u) + " and " + std::to_string(v) +
                   " are not adjacent");
}

PathSignature path_signature(const std::vector<VertexId>& path, ColoredGraph& g,
                             const OrderMode& mode) {
  PathSignature sig;
  sig.theta = ClassVector::zero(g.num_edge_classes());
  for (size_t i = 0; i + 1 < path.size(); ++i) {
    const EdgeId e = find_edge(g, path[i], path[i + 1]);
    auto [w, cls] = g.evaluate_edge(e);
    sig.length += w;
    sig.theta += ClassVector::unit(g.num_edge_classes(), cls,
                                   mode.accum == Accumulation::Count ? 1.0 : w);
    ++sig.hops;
  }
  return sig;
}

}  // namespace coa
