#include <algorithm>
#include <cmath>
#include <random>

#include "coa/worlds.hpp"

namespace coa {

GridWorld::GridWorld(const WorldSpec& spec)
    : width_(spec.width), height_(spec.height), cell_size_(spec.cell_size) {
  if (width_ < 1 || height_ < 1) throw WorldError("grid size must be positive");
  if (cell_size_ <= 0.0) throw WorldError("cell size must be positive");
  if (spec.start.size() != 2 || spec.goal.size() != 2)
    throw WorldError("grid start/goal need two cell coordinates");
  sensor_radius_ = spec.sensor_radius;
  occupancy_.assign(static_cast<size_t>(width_) * height_, 0);

  auto fill = [&](int x, int y) {
    if (x >= 0 && x < width_ && y >= 0 && y < height_)
      occupancy_[static_cast<size_t>(y) * width_ + x] = 1;
  };
  for (const auto& [x, y, w, h] : spec.blocks)
    for (int dy = 0; dy < h; ++dy)
      for (int dx = 0; dx < w; ++dx) fill(x + dx, y + dy);

  const auto in_grid = [&](const std::vector<int>& c) {
    return c[0] >= 0 && c[0] < width_ && c[1] >= 0 && c[1] < height_;
  };
  if (!in_grid(spec.start) || !in_grid(spec.goal))
    throw WorldError("start/goal outside the grid");
  start_ = cell_id(spec.start[0], spec.start[1]);
  goal_ = cell_id(spec.goal[0], spec.goal[1]);

  if (spec.random_obstacles > 0) {
    std::mt19937 rng(spec.seed);
    std::uniform_real_distribution<double> ux(0.0, width_ * cell_size_);
    std::uniform_real_distribution<double> uy(0.0, height_ * cell_size_);
    std::uniform_real_distribution<double> ur(spec.random_min_r, spec.random_max_r);
    const auto s = cell_center(start_);
    const auto g = cell_center(goal_);
    int placed = 0, attempts = 0;
    while (placed < spec.random_obstacles && attempts < spec.random_obstacles * 100) {
      ++attempts;
      const Circle c{ux(rng), uy(rng), ur(rng)};
      const auto covers = [&](const std::array<double, 2>& p) {
        const double dx = p[0] - c.cx, dy = p[1] - c.cy;
        return dx * dx + dy * dy <= c.r * c.r;
      };
      if (covers(s) || covers(g)) continue;
      for (int y = 0; y < height_; ++y)
        for (int x = 0; x < width_; ++x) {
          const auto p = cell_center(cell_id(x, y));
          if (covers(p)) fill(x, y);
        }
      ++placed;
    }
  }

  if (occupied(spec.start[0], spec.start[1])) throw WorldError("start cell is occupied");
  if (occupied(spec.goal[0], spec.goal[1])) throw WorldError("goal cell is occupied");
}

bool GridWorld::occupied(int x, int y) const {
  return occupancy_[static_cast<size_t>(y) * width_ + x] != 0;
}

std::array<double, 2> GridWorld::cell_center(VertexId v) const {
  const int x = v % width_, y = v / width_;
  return {(x + 0.5) * cell_size_, (y + 0.5) * cell_size_};
}

Belief GridWorld::make_belief() const {
  Belief b;
  b.origin_x = 0.0;
  b.origin_y = 0.0;
  b.res = cell_size_;
  b.nx = width_;
  b.ny = height_;
  b.known.assign(static_cast<size_t>(width_) * height_, 0);
  return b;
}

ColoredGraph GridWorld::make_graph(std::shared_ptr<Belief> belief) const {
  ColoredGraph g(3, 3);
  for (VertexId v = 0; v < vertex_count(); ++v) {
    const auto c = cell_center(v);
    g.add_vertex({c[0], c[1]}, kClassUnknown);
  }
  // 8-connectivity, each undirected edge added once.
  static constexpr int kOffsets[4][2] = {{1, 0}, {0, 1}, {1, 1}, {1, -1}};
  for (int y = 0; y < height_; ++y)
    for (int x = 0; x < width_; ++x)
      for (const auto& [dx, dy] : kOffsets) {
        const int nx = x + dx, ny = y + dy;
        if (nx < 0 || nx >= width_ || ny < 0 || ny >= height_) continue;
        g.add_edge(cell_id(x, y), cell_id(nx, ny));
      }
  g.set_class_provider(
      [this, belief](VertexId v) { return classify_vertex(*belief, v); });
  g.set_evaluator([this, belief](VertexId u, VertexId v) {
    return classify_edge(*belief, u, v);
  });
  return g;
}

void GridWorld::sense(Belief& belief, VertexId agent) const {
  const auto c = cell_center(agent);
  belief.mark_disk(c[0], c[1], sensor_radius_);
}

ClassId GridWorld::classify_vertex(const Belief& belief, VertexId v) const {
  const auto c = cell_center(v);
  if (!belief.is_known(c[0], c[1])) return kClassUnknown;
  return occupied(v % width_, v / width_) ? kClassInfeasible : kClassFeasible;
}

std::pair<double, ClassId> GridWorld::classify_edge(const Belief& belief, VertexId u,
                                                    VertexId v) const {
  const auto a = cell_center(u);
  const auto b = cell_center(v);
  const double w = std::hypot(a[0] - b[0], a[1] - b[1]);
  if (belief.edge_blocked(u, v)) return {w, kClassInfeasible};
  const ClassId cls = std::max(classify_vertex(belief, u), classify_vertex(belief, v));
  return {w, cls};
}

bool GridWorld::ground_truth_feasible(VertexId u, VertexId v) const {
  return !occupied(u % width_, u / width_) && !occupied(v % width_, v / width_);
}

}  // namespace coa
