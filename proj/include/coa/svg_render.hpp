#pragma once

#include <string>

#include "coa/sim_loop.hpp"

namespace coa {

// Static SVG snapshot of one planning instance: sensed-region shading,
// class-colored search-tree edges (feasible solid blue, unknown dashed blue,
// infeasible solid red), the solution path, and agent/goal markers.
// Deterministic output: identical snapshots render byte-identically.
std::string render_snapshot_svg(const WorldBase& world, const PlanSnapshot& snap);

}  // namespace coa
