#include "coa/sim_loop.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <memory>

namespace coa {

const char* outcome_name(EpisodeOutcome o) {
  switch (o) {
    case EpisodeOutcome::ReachedGoal: return "ReachedGoal";
    case EpisodeOutcome::Blocked: return "Blocked";
    case EpisodeOutcome::NoPath: return "NoPath";
    case EpisodeOutcome::StepCapExceeded: return "StepCapExceeded";
  }
  return "?";
}

const char* planner_name(PlannerKind p) {
  return p == PlannerKind::Coa ? "coa" : "astar";
}

double uncertainty_ratio(const std::vector<VertexId>& path, ColoredGraph& g) {
  double total = 0.0, unknown = 0.0;
  for (size_t i = 0; i + 1 < path.size(); ++i) {
    const auto [w, cls] = g.evaluate_edge(find_edge(g, path[i], path[i + 1]));
    total += w;
    if (cls == kClassUnknown) unknown += w;
  }
  return total > 0.0 ? unknown / total : 0.0;
}

namespace {

PlanResult run_planner(PlannerKind kind, ColoredGraph& g, VertexId start, VertexId goal,
                       const EpisodeParams& params) {
  if (kind == PlannerKind::Coa) {
    SearchOptions opts;
    opts.order_mode = params.order_mode;
    opts.forbidden_classes = params.forbidden_classes;
    return coa_star(g, start, goal, opts);
  }
  AStarOptions opts;
  opts.blocked_classes = params.forbidden_classes;
  return astar(g, start, goal, opts);
}

StepRecord make_record(int step, PlannerKind kind, const PlanResult& plan,
                       ColoredGraph& g, const WorldBase& world, const Belief& belief) {
  StepRecord rec;
  rec.step = step;
  rec.planner = kind;
  rec.status = plan.status;
  rec.pops = plan.stats.pops;
  rec.evals = plan.stats.evaluations;
  rec.runtime_ms = plan.stats.runtime_sec * 1000.0;
  if (plan.status != PlanStatus::Found) return rec;

  const PathSignature counts = path_signature(plan.path, g, OrderMode{});
  auto count_of = [&](ClassId c) {
    return c <= counts.theta.size() ? static_cast<long>(std::llround(counts.theta.at(c))) : 0L;
  };
  rec.path_len = counts.length;
  rec.n1 = count_of(1);
  rec.n2 = count_of(2);
  rec.n3 = count_of(3);
  rec.unc_ratio = uncertainty_ratio(plan.path, g);

  bool all_sensed = true;
  for (VertexId v : plan.path)
    if (world.classify_vertex(belief, v) == kClassUnknown) {
      all_sensed = false;
      break;
    }
  rec.fully_known = rec.unc_ratio == 0.0 && all_sensed;
  return rec;
}

}  // namespace

EpisodeLog run_episode(const WorldBase& world, const EpisodeParams& params,
                       const std::function<void(const PlanSnapshot&)>& on_plan) {
  EpisodeLog log;
  log.world_name = params.world_name;
  log.seed = params.seed;
  log.radius = params.radius >= 0.0 ? params.radius : world.sensor_radius();

  auto belief = std::make_shared<Belief>(world.make_belief());
  ColoredGraph graph = world.make_graph(belief);
  const VertexId goal = world.goal_vertex();
  VertexId agent = world.start_vertex();
  log.trajectory.push_back(agent);

  long blocked_events = 0;
  int step = 0;
  while (true) {
    if (agent == goal) {
      log.outcome = EpisodeOutcome::ReachedGoal;
      break;
    }
    if (step >= params.step_cap) {
      log.outcome = EpisodeOutcome::StepCapExceeded;
      break;
    }
    world.sense(*belief, agent);
    graph.reset_evaluations();

    PlanResult plan;
    StepRecord exec_rec;
    if (params.paired) {
      // Fixed planner order keeps the CSV stable; each planner pays its own
      // evaluations on the identical belief.
      PlanResult coa_plan = run_planner(PlannerKind::Coa, graph, agent, goal, params);
      StepRecord coa_rec = make_record(step, PlannerKind::Coa, coa_plan, graph, world, *belief);
      log.records.push_back(coa_rec);
      graph.reset_evaluations();
      PlanResult astar_plan = run_planner(PlannerKind::AStar, graph, agent, goal, params);
      StepRecord astar_rec =
          make_record(step, PlannerKind::AStar, astar_plan, graph, world, *belief);
      log.records.push_back(astar_rec);
      const bool use_coa = params.planner == PlannerKind::Coa;
      plan = use_coa ? std::move(coa_plan) : std::move(astar_plan);
      exec_rec = use_coa ? coa_rec : astar_rec;
    } else {
      plan = run_planner(params.planner, graph, agent, goal, params);
      exec_rec = make_record(step, params.planner, plan, graph, world, *belief);
      log.records.push_back(exec_rec);
    }
    if (on_plan) on_plan(PlanSnapshot{step, agent, *belief, plan, graph});
    ++step;

    if (plan.status != PlanStatus::Found) {
      log.outcome = EpisodeOutcome::NoPath;
      break;
    }
    if (plan.path.size() < 2) continue;  // already at the goal

    const bool whole_plan = exec_rec.fully_known && exec_rec.n2 == 0 && exec_rec.n3 == 0;
    const size_t edges_to_walk = whole_plan ? plan.path.size() - 1 : 1;
    for (size_t i = 0; i < edges_to_walk; ++i) {
      const VertexId next = plan.path[i + 1];
      if (!world.ground_truth_feasible(agent, next)) {
        // Execute-time discovery: remember the blockage and replan in place.
        belief->block_edge(agent, next);
        ++blocked_events;
        break;
      }
      agent = next;
      log.trajectory.push_back(agent);
    }
    if (blocked_events > graph.edge_count()) {
      log.outcome = EpisodeOutcome::Blocked;
      break;
    }
  }
  return log;
}

std::string episode_csv_header() {
  return "world,seed,radius,planner,step,path_len,unc_ratio,n1,n2,n3,pops,evals,"
         "runtime_ms,outcome\n";
}

void append_episode_csv(std::string& out, const EpisodeLog& log, bool zero_runtime) {
  char buf[512];
  for (const StepRecord& r : log.records) {
    std::snprintf(buf, sizeof buf,
                  "%s,%u,%.3f,%s,%d,%.6f,%.6f,%ld,%ld,%ld,%ld,%ld,%.3f,%s\n",
                  log.world_name.c_str(), log.seed, log.radius, planner_name(r.planner),
                  r.step, r.path_len, r.unc_ratio, r.n1, r.n2, r.n3, r.pops, r.evals,
                  zero_runtime ? 0.0 : r.runtime_ms, outcome_name(log.outcome));
    out += buf;
  }
}

namespace {

struct Agg {
  std::vector<double> ratios;
  std::vector<double> lengths;
};

double mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double stddev(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

}  // namespace

BatchResult run_batch(const BatchOptions& opts) {
  BatchResult result;
  result.raw_csv = episode_csv_header();

  std::vector<std::pair<std::string, std::string>> agg_order;
  std::map<std::pair<std::string, std::string>, Agg> aggs;

  for (const WorldSpec& base_spec : opts.worlds)
    for (unsigned seed : opts.seeds)
      for (double radius : opts.radii)
        for (PlannerKind planner : opts.planners) {
          WorldSpec spec = base_spec;
          spec.seed = seed;
          if (radius >= 0.0) spec.sensor_radius = radius;
          EpisodeParams params;
          params.planner = planner;
          params.step_cap = opts.step_cap;
          params.order_mode = opts.order_mode;
          params.seed = seed;
          params.radius = spec.sensor_radius;
          params.world_name = spec.name;
          try {
            const auto world = build_world(spec);
            EpisodeLog log = run_episode(*world, params);
            append_episode_csv(result.raw_csv, log, opts.zero_runtime);
            for (const StepRecord& r : log.records) {
              if (r.status != PlanStatus::Found || r.fully_known) continue;
              const auto key = std::make_pair(log.world_name,
                                              std::string(planner_name(r.planner)));
              if (!aggs.count(key)) agg_order.push_back(key);
              aggs[key].ratios.push_back(r.unc_ratio);
              aggs[key].lengths.push_back(r.path_len);
            }
            result.episodes.push_back(std::move(log));
          } catch (const std::exception& e) {
            char buf[256];
            std::snprintf(buf, sizeof buf, "%s seed=%u radius=%.3f planner=%s: %s",
                          spec.name.c_str(), seed, spec.sensor_radius,
                          planner_name(planner), e.what());
            result.errors.emplace_back(buf);
          }
        }

  std::sort(agg_order.begin(), agg_order.end());
  result.summary_csv =
      "world,planner,plans,mean_ratio,median_ratio,std_ratio,mean_len,median_len,"
      "std_len\n";
  char buf[512];
  for (const auto& key : agg_order) {
    const Agg& a = aggs[key];
    std::snprintf(buf, sizeof buf, "%s,%s,%zu,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f\n",
                  key.first.c_str(), key.second.c_str(), a.ratios.size(),
                  mean(a.ratios), median(a.ratios), stddev(a.ratios), mean(a.lengths),
                  median(a.lengths), stddev(a.lengths));
    result.summary_csv += buf;
  }
  return result;
}

}  // namespace coa
