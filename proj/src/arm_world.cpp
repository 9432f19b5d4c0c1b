#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "coa/worlds.hpp"

namespace coa {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_delta(double from, double to) {
  // Signed shortest angular difference from -> to.
  double d = std::fmod(to - from, kTwoPi);
  if (d > std::numbers::pi) d -= kTwoPi;
  if (d < -std::numbers::pi) d += kTwoPi;
  return d;
}

}  // namespace

ArmWorld::ArmWorld(const WorldSpec& spec, long vertex_cap)
    : n_joints_(spec.n_joints), steps_(spec.steps_per_joint), links_(spec.link_lengths),
      obstacles_(spec.obstacles) {
  if (n_joints_ < 1) throw WorldError("arm needs at least one joint");
  if (steps_ < 4) throw WorldError("steps per joint must be at least 4");
  if (static_cast<int>(links_.size()) != n_joints_)
    throw WorldError("links count must match joint count");
  for (double l : links_)
    if (l <= 0.0) throw WorldError("link length must be positive");
  if (static_cast<int>(spec.start.size()) != n_joints_ ||
      static_cast<int>(spec.goal.size()) != n_joints_)
    throw WorldError("arm start/goal need one step index per joint");
  sensor_radius_ = spec.sensor_radius;

  num_vertices_ = 1;
  for (int j = 0; j < n_joints_; ++j) {
    num_vertices_ *= steps_;
    if (num_vertices_ > vertex_cap)
      throw WorldError("arm graph exceeds vertex cap of " + std::to_string(vertex_cap));
  }
  step_angle_ = kTwoPi / steps_;
  scale_.resize(static_cast<size_t>(n_joints_));
  double down = 0.0;
  for (int j = n_joints_ - 1; j >= 0; --j) {
    down += links_[static_cast<size_t>(j)];
    scale_[static_cast<size_t>(j)] = down;
  }
  const double reach = down;

  auto norm_steps = [&](const std::vector<int>& in) {
    std::vector<int> out(in.size());
    for (size_t i = 0; i < in.size(); ++i)
      out[i] = ((in[i] % steps_) + steps_) % steps_;
    return out;
  };
  start_ = config_id(norm_steps(spec.start));
  goal_ = config_id(norm_steps(spec.goal));

  if (spec.random_obstacles > 0) {
    std::mt19937 rng(spec.seed);
    std::uniform_real_distribution<double> uc(-reach, reach);
    std::uniform_real_distribution<double> ur(spec.random_min_r, spec.random_max_r);
    const auto start_pts = link_samples(joint_angles(start_), spec.random_min_r / 4.0);
    const auto goal_pts = link_samples(joint_angles(goal_), spec.random_min_r / 4.0);
    const auto clear_of = [&](const Circle& c, const std::vector<std::array<double, 2>>& pts) {
      for (const auto& p : pts) {
        const double dx = p[0] - c.cx, dy = p[1] - c.cy;
        if (dx * dx + dy * dy <= c.r * c.r) return false;
      }
      return true;
    };
    int placed = 0, attempts = 0;
    while (placed < spec.random_obstacles && attempts < spec.random_obstacles * 100) {
      ++attempts;
      const Circle c{uc(rng), uc(rng), ur(rng)};
      if (!clear_of(c, start_pts) || !clear_of(c, goal_pts)) continue;
      obstacles_.push_back(c);
      ++placed;
    }
  }

  double min_r = reach / 16.0;
  double obst_extent = reach;
  for (const Circle& c : obstacles_) {
    min_r = std::min(min_r, c.r);
    obst_extent = std::max({obst_extent, std::abs(c.cx) + c.r, std::abs(c.cy) + c.r});
  }
  res_ = min_r / 4.0;
  extent_ = obst_extent + res_;

  if (config_collides(joint_angles(start_), res_))
    throw WorldError("start configuration collides with an obstacle");
  if (config_collides(joint_angles(goal_), res_))
    throw WorldError("goal configuration collides with an obstacle");
}

std::vector<int> ArmWorld::joint_steps(VertexId v) const {
  std::vector<int> out(static_cast<size_t>(n_joints_));
  long rem = v;
  for (int j = 0; j < n_joints_; ++j) {
    out[static_cast<size_t>(j)] = static_cast<int>(rem % steps_);
    rem /= steps_;
  }
  return out;
}

VertexId ArmWorld::config_id(const std::vector<int>& steps) const {
  long id = 0;
  for (int j = n_joints_ - 1; j >= 0; --j) id = id * steps_ + steps[static_cast<size_t>(j)];
  return static_cast<VertexId>(id);
}

std::vector<double> ArmWorld::joint_angles(VertexId v) const {
  const auto steps = joint_steps(v);
  std::vector<double> angles(steps.size());
  for (size_t j = 0; j < steps.size(); ++j) angles[j] = steps[j] * step_angle_;
  return angles;
}

std::vector<std::array<double, 2>> ArmWorld::link_samples(
    const std::vector<double>& angles, double spacing) const {
  std::vector<std::array<double, 2>> pts;
  double x = 0.0, y = 0.0, heading = 0.0;
  pts.push_back({x, y});
  for (int j = 0; j < n_joints_; ++j) {
    heading += angles[static_cast<size_t>(j)];
    const double len = links_[static_cast<size_t>(j)];
    const double nx = x + len * std::cos(heading);
    const double ny = y + len * std::sin(heading);
    const int n = std::max(1, static_cast<int>(std::ceil(len / spacing)));
    for (int i = 1; i <= n; ++i) {
      const double t = static_cast<double>(i) / n;
      pts.push_back({x + t * (nx - x), y + t * (ny - y)});
    }
    x = nx;
    y = ny;
  }
  return pts;
}

bool ArmWorld::point_in_obstacle(double x, double y) const {
  for (const Circle& c : obstacles_) {
    const double dx = x - c.cx, dy = y - c.cy;
    if (dx * dx + dy * dy <= c.r * c.r) return true;
  }
  return false;
}

Belief ArmWorld::make_belief() const {
  Belief b;
  b.origin_x = -extent_;
  b.origin_y = -extent_;
  b.res = res_;
  b.nx = b.ny = static_cast<int>(std::ceil(2.0 * extent_ / res_));
  b.known.assign(static_cast<size_t>(b.nx) * b.ny, 0);
  return b;
}

ColoredGraph ArmWorld::make_graph(std::shared_ptr<Belief> belief) const {
  ColoredGraph g(3, 3);
  Metric m;
  m.kind = Metric::Kind::WeightedWrappedL1;
  m.wrap.assign(static_cast<size_t>(n_joints_), kTwoPi);
  m.scale = scale_;
  g.set_metric(m);
  for (VertexId v = 0; v < vertex_count(); ++v)
    g.add_vertex(joint_angles(v), kClassUnknown);
  // Torus grid: +1 step in each joint covers every undirected edge once.
  for (VertexId v = 0; v < vertex_count(); ++v) {
    auto steps = joint_steps(v);
    for (int j = 0; j < n_joints_; ++j) {
      auto nb = steps;
      nb[static_cast<size_t>(j)] = (nb[static_cast<size_t>(j)] + 1) % steps_;
      g.add_edge(v, config_id(nb));
    }
  }
  g.set_class_provider(
      [this, belief](VertexId v) { return classify_vertex(*belief, v); });
  g.set_evaluator([this, belief](VertexId u, VertexId v) {
    return classify_edge(*belief, u, v);
  });
  return g;
}

void ArmWorld::sense(Belief& belief, VertexId agent) const {
  // The sensor rides the arm itself: every link sample point (end effector
  // included) sweeps out a sensing disk.
  for (const auto& p : link_samples(joint_angles(agent), res_))
    belief.mark_disk(p[0], p[1], sensor_radius_);
}

ClassId ArmWorld::classify_config(const Belief& belief,
                                  const std::vector<double>& angles) const {
  bool unknown = false;
  for (const auto& p : link_samples(angles, res_)) {
    if (!belief.is_known(p[0], p[1])) {
      unknown = true;
    } else if (point_in_obstacle(p[0], p[1])) {
      return kClassInfeasible;
    }
  }
  return unknown ? kClassUnknown : kClassFeasible;
}

ClassId ArmWorld::classify_vertex(const Belief& belief, VertexId v) const {
  if (belief.vclass_cache.empty()) {
    belief.vclass_cache.assign(static_cast<size_t>(vertex_count()), 0);
    belief.vclass_version.assign(static_cast<size_t>(vertex_count()), 0);
  }
  ClassId& cached = belief.vclass_cache[static_cast<size_t>(v)];
  uint64_t& ver = belief.vclass_version[static_cast<size_t>(v)];
  // Classes 1 and 3 are final; unknown is rechecked after new sensing.
  if (cached == kClassFeasible || cached == kClassInfeasible) return cached;
  if (cached == kClassUnknown && ver == belief.version) return cached;
  cached = classify_config(belief, joint_angles(v));
  ver = belief.version;
  return cached;
}

std::pair<double, ClassId> ArmWorld::classify_edge(const Belief& belief, VertexId u,
                                                   VertexId v) const {
  const auto au = joint_angles(u);
  const auto av = joint_angles(v);
  std::vector<double> delta(au.size());
  double weight = 0.0;
  for (size_t j = 0; j < au.size(); ++j) {
    delta[j] = wrap_delta(au[j], av[j]);
    weight += std::abs(delta[j]) * scale_[j];
  }
  if (belief.edge_blocked(u, v)) return {weight, kClassInfeasible};

  ClassId cls = std::max(classify_vertex(belief, u), classify_vertex(belief, v));
  // Interior samples every quarter step along the interpolated motion.
  std::vector<double> mid(au.size());
  for (int i = 1; i < 4 && cls < kClassInfeasible; ++i) {
    const double t = i / 4.0;
    for (size_t j = 0; j < au.size(); ++j) mid[j] = au[j] + t * delta[j];
    cls = std::max(cls, classify_config(belief, mid));
  }
  return {weight, cls};
}

bool ArmWorld::ground_truth_feasible(VertexId u, VertexId v) const {
  const auto au = joint_angles(u);
  const auto av = joint_angles(v);
  std::vector<double> delta(au.size()), mid(au.size());
  for (size_t j = 0; j < au.size(); ++j) delta[j] = wrap_delta(au[j], av[j]);
  const int dense = 400;  // 100x the planning-time interpolation density
  for (int i = 0; i <= dense; ++i) {
    const double t = static_cast<double>(i) / dense;
    for (size_t j = 0; j < au.size(); ++j) mid[j] = au[j] + t * delta[j];
    if (config_collides(mid, res_)) return false;
  }
  return true;
}

bool ArmWorld::config_collides(const std::vector<double>& angles, double spacing) const {
  for (const auto& p : link_samples(angles, spacing))
    if (point_in_obstacle(p[0], p[1])) return true;
  return false;
}

}  // namespace coa
