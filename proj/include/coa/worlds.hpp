#pragma once

#include <array>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "coa/colored_graph.hpp"

namespace coa {

// Ternary classification used by all bundled worlds.
inline constexpr ClassId kClassFeasible = 1;
inline constexpr ClassId kClassUnknown = 2;
inline constexpr ClassId kClassInfeasible = 3;

struct Circle {
  double cx = 0.0, cy = 0.0, r = 0.0;
};

struct WorldSpec {
  enum class Kind { Grid, Arm };
  Kind kind = Kind::Grid;
  std::string name = "world";

  // grid
  int width = 0, height = 0;
  double cell_size = 1.0;
  std::vector<std::array<int, 4>> blocks;  // x, y, w, h in cells

  // arm
  int n_joints = 0, steps_per_joint = 0;
  std::vector<double> link_lengths;
  std::vector<Circle> obstacles;

  std::vector<int> start, goal;  // grid: (x, y); arm: joint step indices
  double sensor_radius = 0.0;
  unsigned seed = 0;
  int random_obstacles = 0;
  double random_min_r = 0.0, random_max_r = 0.0;
};

struct WorldError : GraphError {
  using GraphError::GraphError;
};

// Line-oriented world spec ('#' comments): world grid|arm, size W H,
// joints n steps, links l1 .., cell s, block x y [w h], obstacle cx cy r,
// start .., goal .., sensor r, seed n, random-obstacles count min_r max_r.
WorldSpec parse_world_spec(const std::string& text);
WorldSpec load_world_spec(const std::string& path);

/**
 * The agent's knowledge of the workspace: a bitmap of sensed cells at a fixed
 * resolution, growing monotonically across an episode, plus execution-time
 * discoveries of blocked edges.
 */
struct Belief {
  double origin_x = 0.0, origin_y = 0.0;
  double res = 1.0;
  int nx = 0, ny = 0;
  std::vector<uint8_t> known;
  uint64_t version = 1;  // bumped whenever new cells become known
  std::set<std::pair<VertexId, VertexId>> blocked_edges;

  // Per-vertex classification cache; classes 1/3 are final (sensing only
  // refines unknown), class 2 is revalidated against `version`.
  mutable std::vector<ClassId> vclass_cache;
  mutable std::vector<uint64_t> vclass_version;

  bool in_bounds(double x, double y) const;
  bool is_known(double x, double y) const;
  // Marks every cell whose center lies within `radius` of (x, y).
  void mark_disk(double x, double y, double radius);
  bool fully_known() const;
  bool edge_blocked(VertexId u, VertexId v) const;
  void block_edge(VertexId u, VertexId v);
};

/// Ground-truth environment shared by the simulation loop and the renderers.
/// A world is immutable after construction; per-episode state lives in the
/// Belief.
class WorldBase {
public:
  virtual ~WorldBase() = default;

  virtual int vertex_count() const = 0;
  virtual VertexId start_vertex() const = 0;
  virtual VertexId goal_vertex() const = 0;
  double sensor_radius() const { return sensor_radius_; }

  virtual Belief make_belief() const = 0;
  // Belief-backed colored graph: vertex classes and lazy edge evaluation read
  // through the given belief. The world must outlive the graph.
  virtual ColoredGraph make_graph(std::shared_ptr<Belief> belief) const = 0;

  virtual void sense(Belief& belief, VertexId agent) const = 0;
  virtual ClassId classify_vertex(const Belief& belief, VertexId v) const = 0;
  virtual std::pair<double, ClassId> classify_edge(const Belief& belief, VertexId u,
                                                   VertexId v) const = 0;
  // Executability check against ground truth at dense sampling resolution.
  virtual bool ground_truth_feasible(VertexId u, VertexId v) const = 0;

protected:
  double sensor_radius_ = 0.0;
};

/// 8-connected occupancy grid for the 2D mobile robot.
class GridWorld : public WorldBase {
public:
  explicit GridWorld(const WorldSpec& spec);

  int width() const { return width_; }
  int height() const { return height_; }
  double cell_size() const { return cell_size_; }
  bool occupied(int x, int y) const;
  VertexId cell_id(int x, int y) const { return y * width_ + x; }
  std::array<double, 2> cell_center(VertexId v) const;

  int vertex_count() const override { return width_ * height_; }
  VertexId start_vertex() const override { return start_; }
  VertexId goal_vertex() const override { return goal_; }
  Belief make_belief() const override;
  ColoredGraph make_graph(std::shared_ptr<Belief> belief) const override;
  void sense(Belief& belief, VertexId agent) const override;
  ClassId classify_vertex(const Belief& belief, VertexId v) const override;
  std::pair<double, ClassId> classify_edge(const Belief& belief, VertexId u,
                                           VertexId v) const override;
  bool ground_truth_feasible(VertexId u, VertexId v) const override;

private:
  int width_, height_;
  double cell_size_;
  std::vector<uint8_t> occupancy_;
  VertexId start_ = -1, goal_ = -1;
};

/// Planar n-joint arm on a joint-step torus with circular workspace obstacles.
class ArmWorld : public WorldBase {
public:
  explicit ArmWorld(const WorldSpec& spec, long vertex_cap = 1'000'000);

  int n_joints() const { return n_joints_; }
  int steps_per_joint() const { return steps_; }
  const std::vector<Circle>& obstacles() const { return obstacles_; }

  std::vector<int> joint_steps(VertexId v) const;
  VertexId config_id(const std::vector<int>& steps) const;
  std::vector<double> joint_angles(VertexId v) const;
  // Workspace points sampled along every link at the belief resolution,
  // joints and end effector included.
  std::vector<std::array<double, 2>> link_samples(const std::vector<double>& angles,
                                                  double spacing) const;
  double workspace_res() const { return res_; }
  double workspace_extent() const { return extent_; }

  int vertex_count() const override { return static_cast<int>(num_vertices_); }
  VertexId start_vertex() const override { return start_; }
  VertexId goal_vertex() const override { return goal_; }
  Belief make_belief() const override;
  ColoredGraph make_graph(std::shared_ptr<Belief> belief) const override;
  void sense(Belief& belief, VertexId agent) const override;
  ClassId classify_vertex(const Belief& belief, VertexId v) const override;
  std::pair<double, ClassId> classify_edge(const Belief& belief, VertexId u,
                                           VertexId v) const override;
  bool ground_truth_feasible(VertexId u, VertexId v) const override;

private:
  ClassId classify_config(const Belief& belief, const std::vector<double>& angles) const;
  bool config_collides(const std::vector<double>& angles, double spacing) const;
  bool point_in_obstacle(double x, double y) const;

  int n_joints_, steps_;
  long num_vertices_;
  std::vector<double> links_;
  std::vector<double> scale_;  // downstream link length per joint
  std::vector<Circle> obstacles_;
  double step_angle_;
  double res_;     // workspace bitmap resolution
  double extent_;  // workspace half-width around the base
  VertexId start_ = -1, goal_ = -1;
};

std::unique_ptr<WorldBase> build_world(const WorldSpec& spec);

}  // namespace coa
