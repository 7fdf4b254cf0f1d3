#include "gridplan/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gridplan {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_endpoints(const WeightedGrid& grid, CellCoord start, CellCoord goal) {
    if (!grid.in_bounds(start) || !grid.in_bounds(goal))
        throw std::invalid_argument("oracle endpoints must be in bounds");
    if (!grid.passable(start) || !grid.passable(goal))
        throw std::invalid_argument("oracle endpoints must be passable");
}

}  // namespace

EdgeCostFn edge_cost_fn_2d(const WeightedGrid& grid) {
    return [&grid](CellCoord u, CellCoord v) { return edge_cost_2d(grid, u, v); };
}

EdgeCostFn edge_cost_fn_3d(const Scene3D& scene) {
    return [&scene](CellCoord u, CellCoord v) {
        return edge_cost_3d(scene.grid(), scene.elev(), u, v, scene.cost());
    };
}

OracleResult brute_force_shortest_path(const WeightedGrid& grid, CellCoord start,
                                       CellCoord goal, const EdgeCostFn& cost_fn) {
    if (grid.width() > 64 || grid.height() > 64)
        throw std::invalid_argument("oracle limited to grids of at most 64x64");
    check_endpoints(grid, start, goal);

    const std::size_t n = grid.cell_count();
    std::vector<double> dist(n, kInf);
    std::vector<std::int32_t> parent(n, -1);
    dist[grid.index(start)] = 0.0;

    // Label correction: sweep every edge until no label moves. Termination
    // is guaranteed because all edge costs are positive.
    std::array<CellCoord, 8> nbrs;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int y = 0; y < grid.height(); ++y) {
            for (int x = 0; x < grid.width(); ++x) {
                const CellCoord u{x, y};
                const std::size_t ui = grid.index(u);
                if (dist[ui] == kInf || !grid.passable(u)) continue;
                const int count = neighbors_into(grid, u, nbrs);
                for (int i = 0; i < count; ++i) {
                    const CellCoord v = nbrs[i];
                    const std::size_t vi = grid.index(v);
                    const double cand = dist[ui] + cost_fn(u, v);
                    if (cand < dist[vi]) {
                        dist[vi] = cand;
                        parent[vi] = static_cast<std::int32_t>(ui);
                        changed = true;
                    }
                }
            }
        }
    }

    OracleResult result;
    const std::size_t gi = grid.index(goal);
    if (dist[gi] == kInf) return result;
    result.cost = dist[gi];

    std::vector<CellCoord> rev;
    std::size_t cur = gi;
    while (true) {
        rev.push_back({static_cast<int>(cur % grid.width()),
                       static_cast<int>(cur / grid.width())});
        if (cur == grid.index(start)) break;
        cur = static_cast<std::size_t>(parent[cur]);
    }
    result.cells.assign(rev.rbegin(), rev.rend());
    return result;
}

std::optional<double> enumerate_simple_paths(const WeightedGrid& grid, CellCoord start,
                                             CellCoord goal, const EdgeCostFn& cost_fn) {
    if (grid.width() > 4 || grid.height() > 4)
        throw std::invalid_argument("path enumeration limited to grids of at most 4x4");
    check_endpoints(grid, start, goal);

    double best = kInf;

    // DFS over simple paths; the visited set fits in one 32-bit mask.
    struct Frame {
        CellCoord cell;
        std::uint32_t visited;
        double cost;
    };
    std::vector<Frame> stack;
    stack.push_back({start, 1u << grid.index(start), 0.0});
    std::array<CellCoord, 8> nbrs;
    while (!stack.empty()) {
        const Frame f = stack.back();
        stack.pop_back();
        if (f.cost >= best) continue;
        if (f.cell == goal) {
            best = f.cost;
            continue;
        }
        const int count = neighbors_into(grid, f.cell, nbrs);
        for (int i = 0; i < count; ++i) {
            const CellCoord v = nbrs[i];
            const std::uint32_t bit = 1u << grid.index(v);
            if (f.visited & bit) continue;
            const double c = f.cost + cost_fn(f.cell, v);
            if (c >= best) continue;
            stack.push_back({v, f.visited | bit, c});
        }
    }
    if (best == kInf) return std::nullopt;
    return best;
}

}  // namespace gridplan
