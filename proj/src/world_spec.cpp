#include <cmath>
#include <fstream>
#include <sstream>

#include "coa/worlds.hpp"

namespace coa {

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
  throw WorldError("line " + std::to_string(line) + ": " + msg);
}

}  // namespace

WorldSpec parse_world_spec(const std::string& text) {
  WorldSpec spec;
  bool kind_seen = false;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;

  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::string kw;
    if (!(ls >> kw)) continue;

    if (kw == "world") {
      std::string k;
      if (!(ls >> k)) fail(lineno, "expected: world grid|arm");
      if (k == "grid") spec.kind = WorldSpec::Kind::Grid;
      else if (k == "arm") spec.kind = WorldSpec::Kind::Arm;
      else fail(lineno, "unknown world kind '" + k + "'");
      kind_seen = true;
    } else if (kw == "size") {
      if (!(ls >> spec.width >> spec.height)) fail(lineno, "expected: size <W> <H>");
    } else if (kw == "cell") {
      if (!(ls >> spec.cell_size)) fail(lineno, "expected: cell <size>");
    } else if (kw == "joints") {
      if (!(ls >> spec.n_joints >> spec.steps_per_joint))
        fail(lineno, "expected: joints <n> <steps>");
    } else if (kw == "links") {
      double l;
      while (ls >> l) spec.link_lengths.push_back(l);
      if (spec.link_lengths.empty()) fail(lineno, "expected: links <l1> ...");
    } else if (kw == "block") {
      int x, y, w = 1, h = 1;
      if (!(ls >> x >> y)) fail(lineno, "expected: block <x> <y> [<w> <h>]");
      ls >> w >> h;
      spec.blocks.push_back({x, y, w, h});
    } else if (kw == "obstacle") {
      Circle c;
      if (!(ls >> c.cx >> c.cy >> c.r)) fail(lineno, "expected: obstacle <cx> <cy> <r>");
      if (c.r <= 0.0) fail(lineno, "obstacle radius must be positive");
      spec.obstacles.push_back(c);
    } else if (kw == "start" || kw == "goal") {
      std::vector<int>& dst = kw == "start" ? spec.start : spec.goal;
      dst.clear();
      int v;
      while (ls >> v) dst.push_back(v);
      if (dst.empty()) fail(lineno, "expected: " + kw + " <coords...>");
    } else if (kw == "sensor") {
      if (!(ls >> spec.sensor_radius)) fail(lineno, "expected: sensor <radius>");
    } else if (kw == "seed") {
      if (!(ls >> spec.seed)) fail(lineno, "expected: seed <int>");
    } else if (kw == "random-obstacles") {
      if (!(ls >> spec.random_obstacles >> spec.random_min_r >> spec.random_max_r))
        fail(lineno, "expected: random-obstacles <count> <min_r> <max_r>");
    } else {
      fail(lineno, "unknown keyword '" + kw + "'");
    }
  }

  if (!kind_seen) throw WorldError("missing 'world grid|arm' line");
  return spec;
}

WorldSpec load_world_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw WorldError("cannot open world file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  WorldSpec spec = parse_world_spec(ss.str());
  // Name worlds after the file stem for CSV labeling.
  auto slash = path.find_last_of('/');
  std::string stem = slash == std::string::npos ? path : path.substr(slash + 1);
  auto dot = stem.find_last_of('.');
  if (dot != std::string::npos) stem.erase(dot);
  spec.name = stem;
  return spec;
}

bool Belief::in_bounds(double x, double y) const {
  const int cx = static_cast<int>(std::floor((x - origin_x) / res));
  const int cy = static_cast<int>(std::floor((y - origin_y) / res));
  return cx >= 0 && cx < nx && cy >= 0 && cy < ny;
}

bool Belief::is_known(double x, double y) const {
  const int cx = static_cast<int>(std::floor((x - origin_x) / res));
  const int cy = static_cast<int>(std::floor((y - origin_y) / res));
  if (cx < 0 || cx >= nx || cy < 0 || cy >= ny) return true;  // outside the world
  return known[static_cast<size_t>(cy) * nx + cx] != 0;
}

void Belief::mark_disk(double x, double y, double radius) {
  bool changed = false;
  const int x0 = std::max(0, static_cast<int>(std::floor((x - radius - origin_x) / res)));
  const int x1 = std::min(nx - 1, static_cast<int>(std::floor((x + radius - origin_x) / res)));
  const int y0 = std::max(0, static_cast<int>(std::floor((y - radius - origin_y) / res)));
  const int y1 = std::min(ny - 1, static_cast<int>(std::floor((y + radius - origin_y) / res)));
  const double r2 = radius * radius;
  for (int cy = y0; cy <= y1; ++cy) {
    for (int cx = x0; cx <= x1; ++cx) {
      const double px = origin_x + (cx + 0.5) * res;
      const double py = origin_y + (cy + 0.5) * res;
      const double dx = px - x, dy = py - y;
      if (dx * dx + dy * dy > r2) continue;
      uint8_t& cell = known[static_cast<size_t>(cy) * nx + cx];
      if (!cell) {
        cell = 1;
        changed = true;
      }
    }
  }
  if (changed) ++version;
}

bool Belief::fully_known() const {
  for (uint8_t c : known)
    if (!c) return false;
  return true;
}

bool Belief::edge_blocked(VertexId u, VertexId v) const {
  return blocked_edges.count({std::min(u, v), std::max(u, v)}) > 0;
}

void Belief::block_edge(VertexId u, VertexId v) {
  blocked_edges.insert({std::min(u, v), std::max(u, v)});
  ++version;
}

std::unique_ptr<WorldBase> build_world(const WorldSpec& spec) {
  if (spec.kind == WorldSpec::Kind::Grid)
    return std::make_unique<GridWorld>(spec);
  return std::make_unique<ArmWorld>(spec);
}

}  // namespace coa
