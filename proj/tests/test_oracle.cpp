#include <doctest.h>

#include <random>

#include "coa/graph_io.hpp"
#include "coa/oracle.hpp"
#include "test_util.hpp"

using namespace coa;

TEST_CASE("enumerate_simple_paths counts") {
  GraphFile diamond = load_graph_file(testutil::fixture("diamond.graph"));
  CHECK(enumerate_simple_paths(diamond.graph, 0, 3).size() == 2);

  GraphFile k4 = load_graph_file(testutil::fixture("k4.graph"));
  CHECK(enumerate_simple_paths(k4.graph, 0, 3).size() == 5);

  ColoredGraph disconnected(3, 3);
  disconnected.add_vertex({0, 0}, 1);
  disconnected.add_vertex({1, 0}, 1);
  CHECK(enumerate_simple_paths(disconnected, 0, 1).empty());

  CHECK_THROWS_AS(enumerate_simple_paths(k4.graph, 0, 3, /*cap=*/2),
                  OracleEnumerationCap);
}

TEST_CASE("oracle_optimal on the diamond fixture") {
  GraphFile f = load_graph_file(testutil::fixture("diamond.graph"));
  OracleResult r = oracle_optimal(f.graph, 0, 3);
  REQUIRE(r.best.status == PlanStatus::Found);
  CHECK(r.best.path == std::vector<VertexId>{0, 1, 3});
  CHECK(r.best.signature.theta.to_string() == "[2,0,0]");
  CHECK(r.best.signature.length == doctest::Approx(11.0));
  REQUIRE(r.ranked.size() == 2);
  CHECK(r.ranked[1].path == std::vector<VertexId>{0, 2, 3});
}

TEST_CASE("oracle_optimal single edge and forbidden filtering") {
  ColoredGraph g(3, 3);
  g.add_vertex({0, 0}, 1);
  g.add_vertex({0.01, 0}, 1);
  g.add_declared_edge(0, 1, 4.0, 3);
  OracleResult r = oracle_optimal(g, 0, 1);
  REQUIRE(r.best.status == PlanStatus::Found);
  CHECK(r.best.path == std::vector<VertexId>{0, 1});

  OracleResult filtered = oracle_optimal(g, 0, 1, OrderMode{}, /*forbidden=*/{3});
  CHECK(filtered.best.status == PlanStatus::NoPath);
  CHECK(filtered.ranked.empty());
}

TEST_CASE("theta sub-additivity over concatenation") {
  // theta*(u,w) <= theta*(u,v) + theta*(v,w): the optimum through any
  // intermediate vertex is never better than the unconstrained optimum.
  std::mt19937 rng(505);
  const OrderMode modes[] = {{ClassCompare::PaperWorstClass, Accumulation::Count},
                             {ClassCompare::ReverseLex, Accumulation::Length}};
  int checked = 0;
  for (int it = 0; it < 200 && checked < 60; ++it) {
    auto spec = testutil::random_graph_spec(rng, 8, 14);
    for (const OrderMode& mode : modes) {
      ColoredGraph g = spec.build();
      const int n = g.vertex_count();
      std::uniform_int_distribution<VertexId> vid(0, n - 1);
      const VertexId u = vid(rng), v = vid(rng), w = vid(rng);
      OracleResult uv = oracle_optimal(g, u, v, mode);
      OracleResult vw = oracle_optimal(g, v, w, mode);
      OracleResult uw = oracle_optimal(g, u, w, mode);
      if (uv.best.status != PlanStatus::Found || vw.best.status != PlanStatus::Found)
        continue;
      REQUIRE(uw.best.status == PlanStatus::Found);
      // The concatenation is a (not necessarily simple) u-w walk; its theta is
      // an upper bound for at least one simple path, hence for the optimum.
      CHECK(cv_leq(uw.best.signature.theta,
                   uv.best.signature.theta + vw.best.signature.theta, mode));
      ++checked;
    }
  }
  CHECK(checked >= 60);
}

TEST_CASE("improving one edge class never worsens the oracle optimum") {
  std::mt19937 rng(606);
  const OrderMode mode{};
  for (int it = 0; it < 150; ++it) {
    auto spec = testutil::random_graph_spec(rng, 8, 16);
    if (spec.edges.empty()) continue;
    ColoredGraph before = spec.build();
    OracleResult rb = oracle_optimal(before, spec.start, spec.goal, mode);

    std::uniform_int_distribution<size_t> eid(0, spec.edges.size() - 1);
    auto& e = spec.edges[eid(rng)];
    const ClassId floor =
        std::max(spec.vclass[e.u], spec.vclass[e.v]);  // keep the instance valid
    if (e.cls <= floor) continue;
    e.cls -= 1;

    ColoredGraph after = spec.build();
    OracleResult ra = oracle_optimal(after, spec.start, spec.goal, mode);
    if (rb.best.status != PlanStatus::Found) continue;
    REQUIRE(ra.best.status == PlanStatus::Found);
    CHECK(cv_leq(ra.best.signature.theta, rb.best.signature.theta, mode));
  }
}
