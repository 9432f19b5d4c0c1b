#include "coa/svg_render.hpp"

#include <cstdio>

namespace coa {

namespace {

const char* kFeasibleColor = "#1f77b4";
const char* kInfeasibleColor = "#d62728";
const char* kPathColor = "#2ca02c";
const char* kAgentColor = "#ff7f0e";
const char* kGoalColor = "#e377c2";

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

void class_stroke(std::string& out, ClassId cls) {
  out += " stroke=\"";
  out += cls == kClassInfeasible ? kInfeasibleColor : kFeasibleColor;
  out += "\"";
  if (cls == kClassUnknown) out += " stroke-dasharray=\"0.18,0.12\"";
}

ClassId edge_display_class(const ColoredGraph& g, EdgeId e) {
  const EdgeRecord& rec = g.edge(e);
  if (rec.evaluated) return rec.class_true;
  return g.estimate_edge(e).second;
}

void draw_tree(std::string& out, const PlanSnapshot& snap,
               const std::function<std::array<double, 2>(VertexId)>& pos,
               double width) {
  const auto& parent = snap.plan.tree_parent;
  for (VertexId v = 0; v < static_cast<VertexId>(parent.size()); ++v) {
    if (parent[v] < 0) continue;
    const auto a = pos(parent[v]);
    const auto b = pos(v);
    out += "<line x1=\"" + num(a[0]) + "\" y1=\"" + num(a[1]) + "\" x2=\"" + num(b[0]) +
           "\" y2=\"" + num(b[1]) + "\"";
    class_stroke(out, edge_display_class(snap.graph, find_edge(snap.graph, parent[v], v)));
    out += " stroke-width=\"" + num(width) + "\" fill=\"none\"/>\n";
  }
}

void draw_path(std::string& out, const std::vector<VertexId>& path,
               const std::function<std::array<double, 2>(VertexId)>& pos, double width) {
  if (path.size() < 2) return;
  out += "<polyline points=\"";
  for (size_t i = 0; i < path.size(); ++i) {
    const auto p = pos(path[i]);
    if (i) out += " ";
    out += num(p[0]) + "," + num(p[1]);
  }
  out += "\" fill=\"none\" stroke=\"";
  out += kPathColor;
  out += "\" stroke-width=\"" + num(width) + "\" stroke-opacity=\"0.8\"/>\n";
}

std::string render_grid(const GridWorld& world, const PlanSnapshot& snap) {
  const int w = world.width(), h = world.height();
  const double cs = world.cell_size();
  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" "
         "viewBox=\"0 0 " + num(w * cs) + " " + num(h * cs) + "\">\n";
  out += "<rect width=\"" + num(w * cs) + "\" height=\"" + num(h * cs) +
         "\" fill=\"#cccccc\"/>\n";
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const auto c = world.cell_center(world.cell_id(x, y));
      if (!snap.belief.is_known(c[0], c[1])) continue;
      const char* fill = world.occupied(x, y) ? "#333333" : "#ffffff";
      out += "<rect x=\"" + num(x * cs) + "\" y=\"" + num(y * cs) + "\" width=\"" +
             num(cs) + "\" height=\"" + num(cs) + "\" fill=\"" + fill + "\"/>\n";
    }

  auto pos = [&](VertexId v) { return world.cell_center(v); };
  draw_tree(out, snap, pos, 0.06 * cs);
  draw_path(out, snap.plan.path, pos, 0.25 * cs);

  const auto a = world.cell_center(snap.agent);
  const auto g = world.cell_center(world.goal_vertex());
  out += "<circle cx=\"" + num(a[0]) + "\" cy=\"" + num(a[1]) + "\" r=\"" +
         num(0.35 * cs) + "\" fill=\"" + kAgentColor + "\"/>\n";
  out += "<circle cx=\"" + num(g[0]) + "\" cy=\"" + num(g[1]) + "\" r=\"" +
         num(0.35 * cs) + "\" fill=\"" + kGoalColor + "\"/>\n";
  out += "</svg>\n";
  return out;
}

void draw_arm_pose(std::string& out, const ArmWorld& world, VertexId v,
                   const char* color, double width, double opacity) {
  // Joint chain only (coarse spacing yields exactly the joint positions).
  const auto pts = world.link_samples(world.joint_angles(v), 1e9);
  out += "<polyline points=\"";
  for (size_t i = 0; i < pts.size(); ++i) {
    if (i) out += " ";
    out += num(pts[i][0]) + "," + num(pts[i][1]);
  }
  out += "\" fill=\"none\" stroke=\"";
  out += color;
  out += "\" stroke-width=\"" + num(width) + "\" stroke-opacity=\"" + num(opacity) +
         "\" stroke-linecap=\"round\"/>\n";
}

std::string render_arm(const ArmWorld& world, const PlanSnapshot& snap) {
  const double ext = world.workspace_extent();
  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" "
         "viewBox=\"" + num(-ext) + " " + num(-ext) + " " + num(2 * ext) + " " +
         num(2 * ext) + "\">\n";
  out += "<rect x=\"" + num(-ext) + "\" y=\"" + num(-ext) + "\" width=\"" +
         num(2 * ext) + "\" height=\"" + num(2 * ext) + "\" fill=\"#cccccc\"/>\n";

  // Known region, run-length merged per bitmap row.
  const Belief& b = snap.belief;
  for (int cy = 0; cy < b.ny; ++cy) {
    int run = -1;
    for (int cx = 0; cx <= b.nx; ++cx) {
      const bool known =
          cx < b.nx && b.known[static_cast<size_t>(cy) * b.nx + cx] != 0;
      if (known && run < 0) run = cx;
      if (!known && run >= 0) {
        out += "<rect x=\"" + num(b.origin_x + run * b.res) + "\" y=\"" +
               num(b.origin_y + cy * b.res) + "\" width=\"" + num((cx - run) * b.res) +
               "\" height=\"" + num(b.res) + "\" fill=\"#ffffff\"/>\n";
        run = -1;
      }
    }
  }
  for (const Circle& c : world.obstacles())
    out += "<circle cx=\"" + num(c.cx) + "\" cy=\"" + num(c.cy) + "\" r=\"" + num(c.r) +
           "\" fill=\"#8b0000\" fill-opacity=\"0.7\"/>\n";

  const double lw = 0.04 * world.workspace_extent();
  for (size_t i = 1; i + 1 < snap.plan.path.size(); ++i)
    draw_arm_pose(out, world, snap.plan.path[i], kPathColor, lw * 0.6, 0.35);
  draw_arm_pose(out, world, world.goal_vertex(), kGoalColor, lw, 0.9);
  draw_arm_pose(out, world, snap.agent, kFeasibleColor, lw, 1.0);
  out += "</svg>\n";
  return out;
}

}  // namespace

std::string render_snapshot_svg(const WorldBase& world, const PlanSnapshot& snap) {
  if (const auto* grid = dynamic_cast<const GridWorld*>(&world))
    return render_grid(*grid, snap);
  if (const auto* arm = dynamic_cast<const ArmWorld*>(&world))
    return render_arm(*arm, snap);
  throw WorldError("unsupported world type for rendering");
}

}  // namespace coa
