#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gridplan/grid.hpp"
#include "gridplan/planners2d.hpp"

namespace gridplan {

// Immutable planning scene: weights plus elevation under one cost model.
// Holds references; the caller keeps grid and elevation alive.
class Scene3D {
  public:
    Scene3D(const WeightedGrid& grid, const ElevationField& elev, Cost3DParams cost = {});

    const WeightedGrid& grid() const { return *grid_; }
    const ElevationField& elev() const { return *elev_; }
    const Cost3DParams& cost() const { return cost_; }

  private:
    const WeightedGrid* grid_;
    const ElevationField* elev_;
    Cost3DParams cost_;
};

PlanResult plan_dijkstra_3d(const Scene3D& scene, CellCoord start, CellCoord goal);

struct Astar3dOptions {
    // When the gradient penalty is active the per-cell average gradient is
    // recomputed on every visit by default; caching it per cell changes
    // timing only, never values.
    bool cache_gradient = false;
};

PlanResult plan_astar_3d(const Scene3D& scene, CellCoord start, CellCoord goal,
                         std::optional<double> heuristic_scale = std::nullopt,
                         const Astar3dOptions& options = {});

enum class ExtendResult { Advanced, Reached, Trapped };

struct RrtTree {
    struct Node {
        CellCoord cell;
        std::int32_t parent = -1;
    };
    std::vector<Node> nodes;

    // Index of the node nearest to target; ties go to the earliest insertion.
    std::size_t nearest(CellCoord target) const;
};

// Greedy connect: steers from the tree's nearest node toward target in
// delta-steps, inserting nodes while segments stay unblocked. Reached when
// the target cell is attained, Trapped when the first step is blocked,
// Advanced otherwise.
ExtendResult rrt_connect_extend(RrtTree& tree, CellCoord target, const Scene3D& scene,
                                double delta);

PlanResult plan_rrtconnect_3d(const Scene3D& scene, CellCoord start, CellCoord goal,
                              const RrtParams& params);

PlanResult plan_niaco_3d(const Scene3D& scene, CellCoord start, CellCoord goal,
                         const NiacoParams& params);

}  // namespace gridplan
