#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "coa/graph_io.hpp"
#include "coa/oracle.hpp"
#include "coa/search.hpp"
#include "coa/sim_loop.hpp"
#include "coa/svg_render.hpp"

namespace fs = std::filesystem;
using namespace coa;

namespace {

constexpr int kExitFound = 0;
constexpr int kExitError = 1;
constexpr int kExitNoPath = 2;
constexpr int kExitOracleCap = 3;

bool log_enabled(const char* level) {
  const char* env = std::getenv("COA_LOG");
  if (!env) return false;
  const std::string v = env;
  if (v == "debug") return true;
  return v == "info" && std::string(level) == "info";
}

void log_line(const char* level, const std::string& msg) {
  if (log_enabled(level)) std::cerr << "[" << level << "] " << msg << "\n";
}

OrderMode make_order_mode(const std::string& order, const std::string& accum) {
  OrderMode mode;
  mode.compare = order == "revlex" ? ClassCompare::ReverseLex : ClassCompare::PaperWorstClass;
  mode.accum = accum == "length" ? Accumulation::Length : Accumulation::Count;
  return mode;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

std::string fmt_len(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

struct PlanArgs {
  std::string graph_file;
  int start = -1, goal = -1;
  std::string order = "paper", accum = "count";
  std::vector<int> forbid;
};

int cmd_plan(const PlanArgs& args) {
  GraphFile gf = load_graph_file(args.graph_file);
  const VertexId start = args.start >= 0 ? args.start : gf.start.value_or(-1);
  const VertexId goal = args.goal >= 0 ? args.goal : gf.goal.value_or(-1);
  if (start < 0 || goal < 0)
    throw std::runtime_error("start/goal not given (flag or graph file)");

  SearchOptions opts;
  opts.order_mode = make_order_mode(args.order, args.accum);
  opts.forbidden_classes.insert(args.forbid.begin(), args.forbid.end());
  const PlanResult result = coa_star(gf.graph, start, goal, opts);

  if (result.status == PlanStatus::Found) {
    std::string path_str;
    for (VertexId v : result.path) {
      if (!path_str.empty()) path_str += " ";
      path_str += std::to_string(v);
    }
    std::cout << "path: " << path_str << "\n";
    std::cout << "theta=" << result.signature.theta.to_string(opts.order_mode.accum)
              << " len=" << fmt_len(result.signature.length) << "\n";
  } else {
    std::cout << (result.status == PlanStatus::NoPath ? "NO PATH" : "ABORTED") << "\n";
  }
  std::cout << "pops=" << result.stats.pops << " evals=" << result.stats.evaluations
            << " enqueues=" << result.stats.enqueues
            << " runtime_ms=" << fmt_len(result.stats.runtime_sec * 1000.0) << "\n";
  return result.status == PlanStatus::Found ? kExitFound : kExitNoPath;
}

struct SimArgs {
  std::string world_file;
  std::string planner = "coa";
  std::string order = "paper", accum = "count";
  unsigned seed = 0;
  double radius = -1.0;
  bool paired = false;
  bool zero_runtime = false;
  int step_cap = 1000;
  std::string csv_out;
  int svg_every = 0;
  std::string svg_dir = ".";
};

int cmd_sim(const SimArgs& args) {
  WorldSpec spec = load_world_spec(args.world_file);
  spec.seed = args.seed;
  if (args.radius >= 0.0) spec.sensor_radius = args.radius;
  const auto world = build_world(spec);

  EpisodeParams params;
  params.planner = args.planner == "astar" ? PlannerKind::AStar : PlannerKind::Coa;
  params.order_mode = make_order_mode(args.order, args.accum);
  params.paired = args.paired;
  params.seed = args.seed;
  params.radius = spec.sensor_radius;
  params.world_name = spec.name;
  params.step_cap = args.step_cap;

  std::function<void(const PlanSnapshot&)> on_plan;
  if (args.svg_every > 0) {
    on_plan = [&](const PlanSnapshot& snap) {
      if (snap.step % args.svg_every != 0) return;
      const std::string file =
          (fs::path(args.svg_dir) / (spec.name + "_step" + std::to_string(snap.step) + ".svg"))
              .string();
      write_file(file, render_snapshot_svg(*world, snap));
      log_line("debug", "wrote " + file);
    };
  }

  const EpisodeLog log = run_episode(*world, params, on_plan);
  std::string csv = episode_csv_header();
  append_episode_csv(csv, log, args.zero_runtime);
  if (args.csv_out.empty()) {
    std::cout << csv;
  } else {
    write_file(args.csv_out, csv);
  }
  log_line("info", "episode outcome: " + std::string(outcome_name(log.outcome)));
  return kExitFound;
}

struct BenchArgs {
  std::string matrix_file;
  std::string out_dir;
  bool zero_runtime = false;
};

int cmd_bench(const BenchArgs& args) {
  std::ifstream in(args.matrix_file);
  if (!in) throw std::runtime_error("cannot open matrix file: " + args.matrix_file);
  const fs::path base = fs::path(args.matrix_file).parent_path();

  BatchOptions opts;
  opts.zero_runtime = args.zero_runtime;
  std::string order = "paper", accum = "count";
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
      std::string file;
      ls >> file;
      fs::path p = file;
      if (p.is_relative()) p = base / p;
      opts.worlds.push_back(load_world_spec(p.string()));
    } else if (kw == "seeds") {
      unsigned s;
      while (ls >> s) opts.seeds.push_back(s);
    } else if (kw == "radii") {
      double r;
      while (ls >> r) opts.radii.push_back(r);
    } else if (kw == "planners") {
      std::string p;
      while (ls >> p) {
        if (p == "coa") opts.planners.push_back(PlannerKind::Coa);
        else if (p == "astar") opts.planners.push_back(PlannerKind::AStar);
        else throw std::runtime_error("matrix line " + std::to_string(lineno) +
                                      ": unknown planner '" + p + "'");
      }
    } else if (kw == "steps") {
      ls >> opts.step_cap;
    } else if (kw == "order") {
      ls >> order;
    } else if (kw == "accum") {
      ls >> accum;
    } else {
      throw std::runtime_error("matrix line " + std::to_string(lineno) +
                               ": unknown keyword '" + kw + "'");
    }
  }
  if (opts.worlds.empty()) throw std::runtime_error("matrix lists no worlds");
  if (opts.seeds.empty()) opts.seeds.push_back(0);
  if (opts.radii.empty()) opts.radii.push_back(-1.0);
  if (opts.planners.empty())
    opts.planners = {PlannerKind::Coa, PlannerKind::AStar};
  opts.order_mode = make_order_mode(order, accum);

  const BatchResult result = run_batch(opts);
  fs::create_directories(args.out_dir);
  write_file((fs::path(args.out_dir) / "raw.csv").string(), result.raw_csv);
  write_file((fs::path(args.out_dir) / "summary.csv").string(), result.summary_csv);
  std::cout << result.summary_csv;
  for (const std::string& err : result.errors) std::cerr << "episode failed: " << err << "\n";
  return result.episodes.empty() && !result.errors.empty() ? kExitError : kExitFound;
}

struct OracleArgs {
  std::string graph_file;
  int start = -1, goal = -1;
  std::string order = "paper", accum = "count";
  std::vector<int> forbid;
  bool check = false;
  std::string csv_out;
  long cap = 1'000'000;
};

int cmd_oracle(const OracleArgs& args) {
  GraphFile gf = load_graph_file(args.graph_file);
  const VertexId start = args.start >= 0 ? args.start : gf.start.value_or(-1);
  const VertexId goal = args.goal >= 0 ? args.goal : gf.goal.value_or(-1);
  if (start < 0 || goal < 0)
    throw std::runtime_error("start/goal not given (flag or graph file)");
  const OrderMode mode = make_order_mode(args.order, args.accum);
  std::set<ClassId> forbidden(args.forbid.begin(), args.forbid.end());

  OracleResult oracle;
  try {
    oracle = oracle_optimal(gf.graph, start, goal, mode, forbidden, args.cap);
  } catch (const OracleEnumerationCap& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitOracleCap;
  }

  std::string csv = "rank,theta,len,hops,path\n";
  for (size_t i = 0; i < oracle.ranked.size(); ++i) {
    const RankedPath& rp = oracle.ranked[i];
    std::string path_str;
    for (VertexId v : rp.path) {
      if (!path_str.empty()) path_str += " ";
      path_str += std::to_string(v);
    }
    std::cout << "theta=" << rp.signature.theta.to_string(mode.accum)
              << " len=" << fmt_len(rp.signature.length) << " path=" << path_str << "\n";
    csv += std::to_string(i) + "," + rp.signature.theta.to_string(mode.accum) + "," +
           fmt_len(rp.signature.length) + "," + std::to_string(rp.signature.hops) + "," +
           path_str + "\n";
  }
  if (oracle.ranked.empty()) std::cout << "NO PATH\n";
  if (!args.csv_out.empty()) write_file(args.csv_out, csv);

  if (args.check) {
    SearchOptions opts;
    opts.order_mode = mode;
    opts.forbidden_classes = forbidden;
    const PlanResult got = coa_star(gf.graph, start, goal, opts);
    if (got.status != oracle.best.status) {
      std::cerr << "MISMATCH: search status differs from oracle\n";
      return kExitError;
    }
    if (got.status == PlanStatus::Found) {
      const bool theta_ok =
          cv_equal(got.signature.theta, oracle.best.signature.theta, mode);
      const bool len_ok =
          std::abs(got.signature.length - oracle.best.signature.length) <= 1e-9;
      if (!theta_ok || !len_ok) {
        std::cerr << "MISMATCH: search " << got.signature.theta.to_string(mode.accum)
                  << " len=" << fmt_len(got.signature.length) << " vs oracle "
                  << oracle.best.signature.theta.to_string(mode.accum)
                  << " len=" << fmt_len(oracle.best.signature.length) << "\n";
        return kExitError;
      }
    } else {
      std::cout << "NO PATH\n";
    }
    std::cout << "CHECK OK\n";
  }
  return kExitFound;
}

struct RenderArgs {
  std::string world_file;
  std::string episode_csv;
  int step = 0;
  std::string out_svg;
};

int cmd_render(const RenderArgs& args) {
  std::ifstream in(args.episode_csv);
  if (!in) throw std::runtime_error("cannot open episode CSV: " + args.episode_csv);
  std::string line;
  std::getline(in, line);  // header
  unsigned seed = 0;
  double radius = -1.0;
  std::string planner;
  bool found = false;
  int max_step = -1;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string world_col, seed_col, radius_col, planner_col, step_col;
    std::getline(ls, world_col, ',');
    std::getline(ls, seed_col, ',');
    std::getline(ls, radius_col, ',');
    std::getline(ls, planner_col, ',');
    std::getline(ls, step_col, ',');
    const int row_step = std::stoi(step_col);
    max_step = std::max(max_step, row_step);
    if (row_step == args.step && !found) {
      seed = static_cast<unsigned>(std::stoul(seed_col));
      radius = std::stod(radius_col);
      planner = planner_col;
      found = true;
    }
  }
  if (!found)
    throw std::runtime_error("step " + std::to_string(args.step) +
                             " not in episode log (max step " + std::to_string(max_step) + ")");

  WorldSpec spec = load_world_spec(args.world_file);
  spec.seed = seed;
  if (radius >= 0.0) spec.sensor_radius = radius;
  const auto world = build_world(spec);

  EpisodeParams params;
  params.planner = planner == "astar" ? PlannerKind::AStar : PlannerKind::Coa;
  params.seed = seed;
  params.radius = spec.sensor_radius;
  params.world_name = spec.name;

  std::string svg;
  run_episode(*world, params, [&](const PlanSnapshot& snap) {
    if (snap.step == args.step) svg = render_snapshot_svg(*world, snap);
  });
  if (svg.empty()) throw std::runtime_error("replay did not reach step " +
                                            std::to_string(args.step));
  write_file(args.out_svg, svg);
  return kExitFound;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Planning toolkit for weighted colored graphs"};
  app.require_subcommand(1);

  PlanArgs plan_args;
  auto* plan = app.add_subcommand("plan", "Plan a single query on a graph file");
  plan->add_option("--graph", plan_args.graph_file, "graph file")->required();
  plan->add_option("--start", plan_args.start, "start vertex id");
  plan->add_option("--goal", plan_args.goal, "goal vertex id");
  plan->add_option("--order", plan_args.order, "paper|revlex")
      ->check(CLI::IsMember({"paper", "revlex"}));
  plan->add_option("--accum", plan_args.accum, "count|length")
      ->check(CLI::IsMember({"count", "length"}));
  plan->add_option("--forbid", plan_args.forbid, "forbidden class (repeatable)");

  SimArgs sim_args;
  auto* sim = app.add_subcommand("sim", "Run one perception-plan-action episode");
  sim->add_option("--world", sim_args.world_file, "world spec file")->required();
  sim->add_option("--planner", sim_args.planner, "coa|astar")
      ->check(CLI::IsMember({"coa", "astar"}));
  sim->add_option("--order", sim_args.order, "paper|revlex")
      ->check(CLI::IsMember({"paper", "revlex"}));
  sim->add_option("--accum", sim_args.accum, "count|length")
      ->check(CLI::IsMember({"count", "length"}));
  sim->add_option("--seed", sim_args.seed, "world seed");
  sim->add_option("--radius", sim_args.radius, "sensor radius override");
  sim->add_option("--steps", sim_args.step_cap, "step cap");
  sim->add_flag("--paired", sim_args.paired, "log both planners per instance");
  sim->add_flag("--zero-runtime", sim_args.zero_runtime, "write runtime_ms as 0");
  sim->add_option("--csv", sim_args.csv_out, "CSV output file (default stdout)");
  sim->add_option("--svg-every", sim_args.svg_every, "snapshot every K steps");
  sim->add_option("--svg-dir", sim_args.svg_dir, "snapshot output directory");

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "Run a (world x seed x radius x planner) matrix");
  bench->add_option("--matrix", bench_args.matrix_file, "matrix file")->required();
  bench->add_option("--out", bench_args.out_dir, "output directory")->required();
  bench->add_flag("--zero-runtime", bench_args.zero_runtime, "write runtime_ms as 0");

  OracleArgs oracle_args;
  auto* oracle = app.add_subcommand("oracle", "Brute-force enumeration of a graph file");
  oracle->add_option("--graph", oracle_args.graph_file, "graph file")->required();
  oracle->add_option("--start", oracle_args.start, "start vertex id");
  oracle->add_option("--goal", oracle_args.goal, "goal vertex id");
  oracle->add_option("--order", oracle_args.order, "paper|revlex")
      ->check(CLI::IsMember({"paper", "revlex"}));
  oracle->add_option("--accum", oracle_args.accum, "count|length")
      ->check(CLI::IsMember({"count", "length"}));
  oracle->add_option("--forbid", oracle_args.forbid, "forbidden class (repeatable)");
  oracle->add_option("--cap", oracle_args.cap, "enumeration cap");
  oracle->add_flag("--check", oracle_args.check, "cross-check the search result");
  oracle->add_option("--csv", oracle_args.csv_out, "dump ranked list as CSV");

  RenderArgs render_args;
  auto* render = app.add_subcommand("render", "Render an episode step as SVG");
  render->add_option("--world", render_args.world_file, "world spec file")->required();
  render->add_option("--episode", render_args.episode_csv, "episode CSV")->required();
  render->add_option("--step", render_args.step, "step to render")->required();
  render->add_option("--out", render_args.out_svg, "output SVG file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*plan) return cmd_plan(plan_args);
    if (*sim) return cmd_sim(sim_args);
    if (*bench) return cmd_bench(bench_args);
    if (*oracle) return cmd_oracle(oracle_args);
    if (*render) return cmd_render(render_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
