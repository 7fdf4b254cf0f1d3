#include <cmath>
#include <limits>
#include <stdexcept>

#include "cost_detail.hpp"
#include "gridplan/planners2d.hpp"
#include "gridplan/planners3d.hpp"
#include "search_detail.hpp"

namespace gridplan {

namespace {

double checked_scale(const WeightedGrid& grid, std::optional<double> heuristic_scale) {
    if (!heuristic_scale) return grid.min_passable_weight();
    if (!(*heuristic_scale >= 0.0) || !std::isfinite(*heuristic_scale))
        throw std::invalid_argument("heuristic_scale must be non-negative and finite");
    return *heuristic_scale;
}

}  // namespace

PlanResult plan_dijkstra_2d(const WeightedGrid& grid, CellCoord start, CellCoord goal) {
    return detail::best_first_search(
        grid, start, goal,
        [&grid](CellCoord u, CellCoord v) { return detail::edge_cost_2d_fast(grid, u, v); },
        [](CellCoord) { return 0.0; });
}

PlanResult plan_astar_2d(const WeightedGrid& grid, CellCoord start, CellCoord goal,
                         std::optional<double> heuristic_scale) {
    const double scale = checked_scale(grid, heuristic_scale);
    return detail::best_first_search(
        grid, start, goal,
        [&grid](CellCoord u, CellCoord v) { return detail::edge_cost_2d_fast(grid, u, v); },
        [goal, scale](CellCoord c) { return euclid(c, goal) * scale; });
}

Scene3D::Scene3D(const WeightedGrid& grid, const ElevationField& elev, Cost3DParams cost)
    : grid_(&grid), elev_(&elev), cost_(cost) {
    elev.validate();
    cost_.validate();
    if (elev.width != grid.width() || elev.height != grid.height())
        throw std::invalid_argument("elevation field dimensions do not match the grid");
}

PlanResult plan_dijkstra_3d(const Scene3D& scene, CellCoord start, CellCoord goal) {
    const WeightedGrid& grid = scene.grid();
    const ElevationField& elev = scene.elev();
    const Cost3DParams& p = scene.cost();
    const auto zero = [](CellCoord) { return 0.0; };
    if (p.gradient_penalty != 0.0) {
        // Each cell's average gradient is fixed by the elevation field, so it
        // is computed once per cell; the memo counts toward accounted memory.
        std::vector<double> memo(grid.cell_count(),
                                 std::numeric_limits<double>::quiet_NaN());
        PlanResult result = detail::best_first_search(
            grid, start, goal,
            [&grid, &elev, &p, &memo](CellCoord u, CellCoord v) {
                double& slot = memo[static_cast<std::size_t>(v.y) * grid.width() + v.x];
                if (std::isnan(slot)) slot = avg_gradient(elev, v, p.gradient_window);
                return detail::edge_cost_3d_fast(grid, elev, u, v, p, &slot);
            },
            zero);
        result.peak_bytes += memo.size() * sizeof(double);
        return result;
    }
    return detail::best_first_search(
        grid, start, goal,
        [&grid, &elev, &p](CellCoord u, CellCoord v) {
            return detail::edge_cost_3d_fast(grid, elev, u, v, p);
        },
        zero);
}

PlanResult plan_astar_3d(const Scene3D& scene, CellCoord start, CellCoord goal,
                         std::optional<double> heuristic_scale,
                         const Astar3dOptions& options) {
    const WeightedGrid& grid = scene.grid();
    const ElevationField& elev = scene.elev();
    const Cost3DParams& p = scene.cost();
    const double scale = checked_scale(grid, heuristic_scale);

    const auto heuristic = [&elev, &p, goal, scale](CellCoord c) {
        return detail::dist_3d(elev, p, c, goal) * scale;
    };

    if (options.cache_gradient && p.gradient_penalty != 0.0) {
        // Memoized per-cell gradient: value-identical to the default per-visit
        // recomputation, it only changes timing. The default stays on the
        // recompute path because that is the behavior under comparison.
        std::vector<double> memo(grid.cell_count(),
                                 std::numeric_limits<double>::quiet_NaN());
        PlanResult result = detail::best_first_search(
            grid, start, goal,
            [&grid, &elev, &p, &memo](CellCoord u, CellCoord v) {
                double& slot = memo[static_cast<std::size_t>(v.y) * grid.width() + v.x];
                if (std::isnan(slot)) slot = avg_gradient(elev, v, p.gradient_window);
                return detail::edge_cost_3d_fast(grid, elev, u, v, p, &slot);
            },
            heuristic);
        result.peak_bytes += memo.size() * sizeof(double);
        return result;
    }
    return detail::best_first_search(
        grid, start, goal,
        [&grid, &elev, &p](CellCoord u, CellCoord v) {
            return detail::edge_cost_3d_fast(grid, elev, u, v, p);
        },
        heuristic);
}

}  // namespace gridplan
