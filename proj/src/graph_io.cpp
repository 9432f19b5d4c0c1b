#include "coa/graph_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace coa {

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
  throw GraphError("line " + std::to_string(line) + ": " + msg);
}

struct VertexDecl {
  int id;
  ClassId cls;
  std::vector<double> pos;
  int line;
};

struct EdgeDecl {
  int u, v;
  std::optional<double> weight;
  std::optional<ClassId> cls;
  int line;
};

}  // namespace

GraphFile load_graph(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;

  std::optional<std::pair<int, int>> classes;
  std::vector<VertexDecl> vertex_decls;
  std::vector<EdgeDecl> edge_decls;
  std::optional<std::pair<int, int>> start, goal;  // (id, line)

  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::string kw;
    if (!(ls >> kw)) continue;

    if (kw == "classes") {
      int k, l;
      if (!(ls >> k >> l)) fail(lineno, "expected: classes <K> <L>");
      classes = {k, l};
    } else if (kw == "vertex") {
      VertexDecl d;
      d.line = lineno;
      if (!(ls >> d.id >> d.cls)) fail(lineno, "expected: vertex <id> <class> <x> ...");
      double x;
      while (ls >> x) d.pos.push_back(x);
      if (d.pos.empty()) fail(lineno, "vertex needs at least one coordinate");
      vertex_decls.push_back(std::move(d));
    } else if (kw == "edge") {
      EdgeDecl d;
      d.line = lineno;
      if (!(ls >> d.u >> d.v)) fail(lineno, "expected: edge <u> <v> [w=..] [c=..]");
      std::string tok;
      int bare = 0;
      while (ls >> tok) {
        try {
          if (tok.rfind("w=", 0) == 0) {
            d.weight = std::stod(tok.substr(2));
          } else if (tok.rfind("c=", 0) == 0) {
            d.cls = std::stoi(tok.substr(2));
          } else if (bare == 0) {
            d.weight = std::stod(tok);
            ++bare;
          } else if (bare == 1) {
            d.cls = std::stoi(tok);
            ++bare;
          } else {
            fail(lineno, "unexpected token '" + tok + "'");
          }
        } catch (const GraphError&) {
          throw;
        } catch (const std::exception&) {
          fail(lineno, "bad number '" + tok + "'");
        }
      }
      if (d.weight.has_value() != d.cls.has_value())
        fail(lineno, "edge must declare both w and c, or neither");
      edge_decls.push_back(d);
    } else if (kw == "start" || kw == "goal") {
      int id;
      if (!(ls >> id)) fail(lineno, "expected: " + kw + " <id>");
      (kw == "start" ? start : goal) = {id, lineno};
    } else {
      fail(lineno, "unknown keyword '" + kw + "'");
    }
  }

  if (!classes) throw GraphError("missing 'classes <K> <L>' line");

  GraphFile out{ColoredGraph(classes->first, classes->second), {}, {}};
  ColoredGraph& g = out.graph;

  std::sort(vertex_decls.begin(), vertex_decls.end(),
            [](const VertexDecl& a, const VertexDecl& b) { return a.id < b.id; });
  for (size_t i = 0; i < vertex_decls.size(); ++i) {
    const VertexDecl& d = vertex_decls[i];
    if (d.id != static_cast<int>(i))
      fail(d.line, "vertex ids must be dense 0..n-1 (got " + std::to_string(d.id) + ")");
    try {
      g.add_vertex(d.pos, d.cls);
    } catch (const GraphError& e) {
      fail(d.line, e.what());
    }
  }

  for (const EdgeDecl& d : edge_decls) {
    if (d.u < 0 || d.u >= g.vertex_count()) fail(d.line, "unknown vertex " + std::to_string(d.u));
    if (d.v < 0 || d.v >= g.vertex_count()) fail(d.line, "unknown vertex " + std::to_string(d.v));
    try {
      if (d.weight) {
        g.add_declared_edge(d.u, d.v, *d.weight, *d.cls);
      } else {
        g.add_edge(d.u, d.v);
      }
    } catch (const GraphError& e) {
      fail(d.line, e.what());
    }
  }

  auto resolve = [&](const std::optional<std::pair<int, int>>& decl) -> std::optional<VertexId> {
    if (!decl) return std::nullopt;
    if (decl->first < 0 || decl->first >= g.vertex_count())
      fail(decl->second, "unknown vertex " + std::to_string(decl->first));
    return decl->first;
  };
  out.start = resolve(start);
  out.goal = resolve(goal);
  return out;
}

GraphFile load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open graph file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_graph(ss.str());
}

}  // namespace coa
