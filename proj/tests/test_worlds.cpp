#include <doctest.h>

#include <memory>
#include <random>

#include "coa/worlds.hpp"
#include "test_util.hpp"

using namespace coa;

namespace {

std::shared_ptr<Belief> belief_of(const WorldBase& w) {
  return std::make_shared<Belief>(w.make_belief());
}

}  // namespace

TEST_CASE("3x3 empty grid has 9 vertices and 20 undirected edges") {
  WorldSpec spec = parse_world_spec(
      "world grid\nsize 3 3\nstart 0 0\ngoal 2 2\nsensor 1\n");
  GridWorld world(spec);
  CHECK(world.vertex_count() == 9);
  ColoredGraph g = world.make_graph(belief_of(world));
  CHECK(g.vertex_count() == 9);
  CHECK(g.edge_count() == 20);
}

TEST_CASE("1x2 grid has a single edge of weight cell_size") {
  WorldSpec spec = parse_world_spec(
      "world grid\nsize 1 2\ncell 0.5\nstart 0 0\ngoal 0 1\nsensor 1\n");
  GridWorld world(spec);
  ColoredGraph g = world.make_graph(belief_of(world));
  REQUIRE(g.edge_count() == 1);
  CHECK(g.edge(0).weight_estimate == doctest::Approx(0.5));
}

TEST_CASE("start inside an obstacle is rejected") {
  CHECK_THROWS_AS(GridWorld(parse_world_spec(
                      "world grid\nsize 3 3\nblock 0 0\nstart 0 0\ngoal 2 2\n")),
                  WorldError);
  CHECK_THROWS_AS(GridWorld(parse_world_spec(
                      "world grid\nsize 3 3\nstart 5 5\ngoal 2 2\n")),
                  WorldError);
}

TEST_CASE("arm torus connectivity") {
  WorldSpec spec = parse_world_spec(
      "world arm\njoints 2 8\nlinks 1 1\nstart 0 0\ngoal 4 4\nsensor 1\n");
  ArmWorld world(spec);
  CHECK(world.vertex_count() == 64);
  ColoredGraph g = world.make_graph(belief_of(world));
  CHECK(g.edge_count() == 2 * 64);  // n * steps^n undirected edges
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    CHECK(g.outgoing(v).size() == 4);  // +-1 step per joint on the torus
}

TEST_CASE("single-joint arm is a cycle") {
  WorldSpec spec = parse_world_spec(
      "world arm\njoints 1 4\nlinks 1\nstart 0\ngoal 2\nsensor 1\n");
  ArmWorld world(spec);
  CHECK(world.vertex_count() == 4);
  ColoredGraph g = world.make_graph(belief_of(world));
  CHECK(g.edge_count() == 4);
  for (VertexId v = 0; v < 4; ++v) CHECK(g.outgoing(v).size() == 2);
}

TEST_CASE("arm vertex cap") {
  WorldSpec spec = parse_world_spec(
      "world arm\njoints 5 16\nlinks 1 1 1 1 1\nstart 0 0 0 0 0\n"
      "goal 8 0 0 0 0\nsensor 1\n");
  CHECK_THROWS_AS(ArmWorld{spec}, WorldError);  // 16^5 > 1'000'000
  CHECK_NOTHROW(ArmWorld(spec, /*vertex_cap=*/2'000'000));
}

TEST_CASE("sense with radius zero reveals only the agent's cell") {
  WorldSpec spec = parse_world_spec(
      "world grid\nsize 4 4\nstart 1 1\ngoal 3 3\nsensor 0\n");
  GridWorld world(spec);
  Belief b = world.make_belief();
  world.sense(b, world.start_vertex());
  int known = 0;
  for (uint8_t c : b.known) known += c;
  CHECK(known == 1);
  const auto center = world.cell_center(world.start_vertex());
  CHECK(b.is_known(center[0], center[1]));
}

TEST_CASE("sense with a world-sized radius reveals everything") {
  GridWorld world(load_world_spec(testutil::fixture("grid_known.world")));
  auto b = belief_of(world);
  world.sense(*b, world.start_vertex());
  CHECK(b->fully_known());
  for (VertexId v = 0; v < world.vertex_count(); ++v) {
    const ClassId c = world.classify_vertex(*b, v);
    CHECK((c == kClassFeasible || c == kClassInfeasible));
  }
}

TEST_CASE("sensing is idempotent at a fixed pose") {
  GridWorld world(load_world_spec(testutil::fixture("grid20.world")));
  Belief b = world.make_belief();
  world.sense(b, world.start_vertex());
  const auto known = b.known;
  const auto version = b.version;
  world.sense(b, world.start_vertex());
  CHECK(b.known == known);
  CHECK(b.version == version);
}

TEST_CASE("classification monotonicity: sensing only refines unknown") {
  GridWorld world(load_world_spec(testutil::fixture("grid20.world")));
  Belief b = world.make_belief();
  std::mt19937 rng(13);
  std::uniform_int_distribution<VertexId> vid(0, world.vertex_count() - 1);
  std::vector<ClassId> last(static_cast<size_t>(world.vertex_count()), kClassUnknown);
  for (int round = 0; round < 25; ++round) {
    world.sense(b, vid(rng));
    for (VertexId v = 0; v < world.vertex_count(); ++v) {
      const ClassId c = world.classify_vertex(b, v);
      if (last[static_cast<size_t>(v)] != kClassUnknown)
        CHECK(c == last[static_cast<size_t>(v)]);
      last[static_cast<size_t>(v)] = c;
    }
  }
}

TEST_CASE("edge class dominates both endpoint classes") {
  ArmWorld world(load_world_spec(testutil::fixture("arm3.world")));
  auto b = belief_of(world);
  world.sense(*b, world.start_vertex());
  ColoredGraph g = world.make_graph(b);
  std::mt19937 rng(17);
  std::uniform_int_distribution<EdgeId> eid(0, g.edge_count() - 1);
  for (int it = 0; it < 400; ++it) {
    const EdgeRecord& rec = g.edge(eid(rng));
    const auto [w, cls] = world.classify_edge(*b, rec.u, rec.v);
    CHECK(cls >= world.classify_vertex(*b, rec.u));
    CHECK(cls >= world.classify_vertex(*b, rec.v));
    CHECK(w > 0.0);
    CHECK(w >= rec.weight_estimate - 1e-9);  // estimate stays admissible
  }
}

TEST_CASE("interior interpolation catches a near-miss sweep") {
  // A 90-degree rotation whose endpoints are collision free but whose swept
  // arc passes through a small sensed obstacle.
  WorldSpec spec = parse_world_spec(
      "world arm\njoints 1 4\nlinks 1\nobstacle 0.7071 0.7071 0.1\n"
      "start 0\ngoal 2\nsensor 10\n");
  ArmWorld world(spec);
  auto b = belief_of(world);
  world.sense(*b, world.start_vertex());
  REQUIRE(b->fully_known());

  const VertexId v0 = world.config_id({0});
  const VertexId v1 = world.config_id({1});
  CHECK(world.classify_vertex(*b, v0) == kClassFeasible);
  CHECK(world.classify_vertex(*b, v1) == kClassFeasible);
  CHECK(world.classify_edge(*b, v0, v1).second == kClassInfeasible);
  CHECK_FALSE(world.ground_truth_feasible(v0, v1));
  // The opposite quarter turn swings the arm away from the obstacle.
  const VertexId v3 = world.config_id({3});
  CHECK(world.classify_edge(*b, v0, v3).second == kClassFeasible);
  CHECK(world.ground_truth_feasible(v0, v3));
}

TEST_CASE("grid ground truth blocks edges into occupied cells") {
  GridWorld world(load_world_spec(testutil::fixture("grid_known.world")));
  // Fixture blocks the column x=3, y=2..5.
  const VertexId wall = world.cell_id(3, 3);
  const VertexId free_nb = world.cell_id(2, 3);
  CHECK_FALSE(world.ground_truth_feasible(free_nb, wall));
  CHECK(world.ground_truth_feasible(world.cell_id(1, 3), free_nb));
}

TEST_CASE("blocked edges classify as infeasible") {
  GridWorld world(load_world_spec(testutil::fixture("grid_known.world")));
  Belief b = world.make_belief();
  world.sense(b, world.start_vertex());
  const VertexId u = world.start_vertex();
  const VertexId v = world.cell_id(1, 0);
  CHECK(world.classify_edge(b, u, v).second == kClassFeasible);
  b.block_edge(u, v);
  CHECK(world.classify_edge(b, u, v).second == kClassInfeasible);
  CHECK(world.classify_edge(b, v, u).second == kClassInfeasible);
}

TEST_CASE("build_world factory and spec names") {
  const WorldSpec grid = load_world_spec(testutil::fixture("grid20.world"));
  CHECK(grid.name == "grid20");
  CHECK(dynamic_cast<GridWorld*>(build_world(grid).get()) != nullptr);
  const WorldSpec arm = load_world_spec(testutil::fixture("arm3.world"));
  CHECK(arm.name == "arm3");
  CHECK(dynamic_cast<ArmWorld*>(build_world(arm).get()) != nullptr);
}

TEST_CASE("world spec parse errors carry line numbers") {
  CHECK_THROWS_AS(parse_world_spec("size 3 3\n"), WorldError);  // missing kind
  CHECK_THROWS_WITH_AS(parse_world_spec("world grid\nbogus 1\n"),
                       "line 2: unknown keyword 'bogus'", WorldError);
  CHECK_THROWS_AS(parse_world_spec("world grid\nobstacle 0 0 -1\n"), WorldError);
}
