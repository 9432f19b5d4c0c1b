#pragma once

#include <map>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "coa/colored_graph.hpp"

namespace coa::testutil {

inline std::string fixture(const char* name) {
  return std::string(FIXTURE_DIR) + "/" + name;
}

/// Mutable description of a small random instance; builds either a fully
/// declared graph or a lazily evaluated one backed by the same truth table.
struct RandomGraphSpec {
  struct EdgeSpec {
    VertexId u, v;
    double weight;
    ClassId cls;
  };
  int num_classes = 3;
  std::vector<std::vector<double>> positions;
  std::vector<ClassId> vclass;
  std::vector<EdgeSpec> edges;
  VertexId start = 0, goal = 0;

  ColoredGraph build(bool lazy = false) const {
    ColoredGraph g(num_classes, num_classes);
    for (size_t i = 0; i < positions.size(); ++i) g.add_vertex(positions[i], vclass[i]);
    if (lazy) {
      auto table = std::make_shared<std::map<std::pair<VertexId, VertexId>, std::pair<double, ClassId>>>();
      for (const EdgeSpec& e : edges) {
        (*table)[{std::min(e.u, e.v), std::max(e.u, e.v)}] = {e.weight, e.cls};
        g.add_edge(e.u, e.v);
      }
      g.set_evaluator([table](VertexId u, VertexId v) {
        return table->at({std::min(u, v), std::max(u, v)});
      });
    } else {
      for (const EdgeSpec& e : edges) g.add_declared_edge(e.u, e.v, e.weight, e.cls);
    }
    return g;
  }
};

// Random instance with admissible Euclidean estimates by construction:
// positions live in a ball smaller than the minimum edge weight.
inline RandomGraphSpec random_graph_spec(std::mt19937& rng, int max_vertices = 12,
                                         int max_edges = 30) {
  std::uniform_int_distribution<int> nv(2, max_vertices);
  std::uniform_real_distribution<double> pos(0.0, 0.07);
  std::uniform_real_distribution<double> weight(0.1, 10.0);
  std::uniform_int_distribution<ClassId> cls(1, 3);

  RandomGraphSpec spec;
  const int n = nv(rng);
  for (int i = 0; i < n; ++i) {
    spec.positions.push_back({pos(rng), pos(rng)});
    spec.vclass.push_back(cls(rng));
  }
  std::uniform_int_distribution<int> ne(1, max_edges);
  std::uniform_int_distribution<VertexId> vid(0, n - 1);
  const int m = ne(rng);
  std::set<std::pair<VertexId, VertexId>> seen;
  for (int i = 0; i < m; ++i) {
    const VertexId u = vid(rng), v = vid(rng);
    if (u == v || !seen.insert({std::min(u, v), std::max(u, v)}).second) continue;
    const ClassId c = std::max({cls(rng), spec.vclass[u], spec.vclass[v]});
    spec.edges.push_back({u, v, weight(rng), c});
  }
  spec.start = vid(rng);
  spec.goal = vid(rng);
  return spec;
}

inline ClassVector random_class_vector(std::mt19937& rng, int num_classes,
                                       int max_count = 5) {
  std::uniform_int_distribution<int> val(0, max_count);
  ClassVector cv = ClassVector::zero(num_classes);
  for (int k = 1; k <= num_classes; ++k)
    cv += ClassVector::unit(num_classes, k, val(rng));
  return cv;
}

}  // namespace coa::testutil
