#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "gridplan/grid.hpp"
#include "gridplan/planners3d.hpp"

// Test-only references. Deliberately naive and structurally unlike the
// planners' priority-queue searches; never call these from a planner.
namespace gridplan {

struct OracleResult {
    std::optional<double> cost;      // nullopt = unreachable
    std::vector<CellCoord> cells;    // one optimal sequence when reachable
};

using EdgeCostFn = std::function<double(CellCoord, CellCoord)>;

EdgeCostFn edge_cost_fn_2d(const WeightedGrid& grid);
EdgeCostFn edge_cost_fn_3d(const Scene3D& scene);

// Bellman-Ford label correction iterated to a full fixpoint. Grids larger
// than 64x64 are rejected.
OracleResult brute_force_shortest_path(const WeightedGrid& grid, CellCoord start,
                                       CellCoord goal, const EdgeCostFn& cost_fn);

// Exhaustive DFS over all simple paths (with cost-bound pruning). Grids
// larger than 4x4 are rejected.
std::optional<double> enumerate_simple_paths(const WeightedGrid& grid, CellCoord start,
                                             CellCoord goal, const EdgeCostFn& cost_fn);

}  // namespace gridplan
