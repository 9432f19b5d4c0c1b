#pragma once

#include <functional>
#include <string>
#include <vector>

#include "coa/search.hpp"
#include "coa/worlds.hpp"

namespace coa {

enum class EpisodeOutcome { ReachedGoal, Blocked, NoPath, StepCapExceeded };

const char* outcome_name(EpisodeOutcome o);

enum class PlannerKind { Coa, AStar };

const char* planner_name(PlannerKind p);

struct EpisodeParams {
  PlannerKind planner = PlannerKind::Coa;
  int step_cap = 1000;
  OrderMode order_mode;
  std::set<ClassId> forbidden_classes = {kClassInfeasible};
  // Also run the other planner at every planning instance on the identical
  // belief (logged, not executed). The agent always follows `planner`.
  bool paired = false;
  unsigned seed = 0;       // echoed into the log
  double radius = -1.0;    // echoed into the log; <0 means "world default"
  std::string world_name = "world";
};

/// One row per planning instance.
struct StepRecord {
  int step = 0;
  PlannerKind planner = PlannerKind::Coa;
  PlanStatus status = PlanStatus::NoPath;
  double path_len = 0.0;
  double unc_ratio = 0.0;
  long n1 = 0, n2 = 0, n3 = 0;  // class counts of the plan's edges
  long pops = 0, evals = 0;
  double runtime_ms = 0.0;
  // Plan is entirely through sensed space with ratio 0; such rows are kept in
  // the raw log but dropped from the scatter/summary dataset.
  bool fully_known = false;
};

struct EpisodeLog {
  std::string world_name;
  unsigned seed = 0;
  double radius = 0.0;
  std::vector<StepRecord> records;
  EpisodeOutcome outcome = EpisodeOutcome::StepCapExceeded;
  std::vector<VertexId> trajectory;  // executed vertices, start first
};

/// State handed to observers (SVG snapshots) after each planning instance.
struct PlanSnapshot {
  int step;
  VertexId agent;
  const Belief& belief;
  const PlanResult& plan;
  ColoredGraph& graph;
};

// Fraction of the path's length contributed by unknown-class edges; 0 for an
// empty path. Edges must already be evaluated (plans always are).
double uncertainty_ratio(const std::vector<VertexId>& path, ColoredGraph& g);

// The perception-plan-action loop: sense, replan from scratch on the belief,
// execute the plan's first edge (or the whole plan once it is fully known and
// feasible), repeat until the goal or the step cap. A first edge that turns
// out ground-truth infeasible is marked in the belief and triggers a replan
// without moving.
EpisodeLog run_episode(const WorldBase& world, const EpisodeParams& params,
                       const std::function<void(const PlanSnapshot&)>& on_plan = {});

// CSV per the fixed schema; header:
// world,seed,radius,planner,step,path_len,unc_ratio,n1,n2,n3,pops,evals,runtime_ms,outcome
std::string episode_csv_header();
void append_episode_csv(std::string& out, const EpisodeLog& log,
                        bool zero_runtime = false);

struct BatchOptions {
  std::vector<WorldSpec> worlds;
  std::vector<unsigned> seeds;
  std::vector<double> radii;
  std::vector<PlannerKind> planners;
  int step_cap = 1000;
  OrderMode order_mode;
  bool zero_runtime = false;  // byte-stable CSV for rerun comparisons
};

struct BatchResult {
  std::string raw_csv;
  std::string summary_csv;
  std::vector<EpisodeLog> episodes;
  std::vector<std::string> errors;  // per-episode failures, batch continues
};

// Runs the full (world x seed x radius x planner) matrix in a deterministic
// order. Summary rows aggregate the scatter dataset (fully-known plans
// excluded) per world and planner.
BatchResult run_batch(const BatchOptions& opts);

}  // namespace coa
