#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

#include "gridplan/grid.hpp"
#include "gridplan/planners2d.hpp"

// One best-first search drives Dijkstra and A*, 2D and 3D; only the edge
// cost and the heuristic differ. Ties pop lowest (f, y, x).
namespace gridplan::detail {

// Logical sizes for accounted memory: a labeled cell stores its g value,
// parent index and closed flag; a heap entry stores (f, y, x).
constexpr std::size_t kSearchNodeBytes =
    sizeof(double) + sizeof(std::int32_t) + sizeof(std::uint8_t);
constexpr std::size_t kHeapEntryBytes = sizeof(double) + 2 * sizeof(std::int32_t);

struct HeapEntry {
    double f;
    std::int32_t y;
    std::int32_t x;
};

struct HeapEntryAfter {
    bool operator()(const HeapEntry& a, const HeapEntry& b) const {
        if (a.f != b.f) return a.f > b.f;
        if (a.y != b.y) return a.y > b.y;
        return a.x > b.x;
    }
};

inline void check_endpoints(const WeightedGrid& grid, CellCoord start, CellCoord goal) {
    for (const CellCoord c : {start, goal}) {
        if (!grid.in_bounds(c))
            throw std::invalid_argument("endpoint (" + std::to_string(c.x) + "," +
                                        std::to_string(c.y) + ") is out of bounds");
        if (!grid.passable(c))
            throw std::invalid_argument("endpoint (" + std::to_string(c.x) + "," +
                                        std::to_string(c.y) + ") is impassable");
    }
}

template <typename EdgeCost, typename Heuristic>
PlanResult best_first_search(const WeightedGrid& grid, CellCoord start, CellCoord goal,
                             EdgeCost&& edge_cost, Heuristic&& heuristic) {
    check_endpoints(grid, start, goal);

    constexpr double kInf = std::numeric_limits<double>::infinity();
    const std::size_t n = grid.cell_count();
    std::vector<double> g(n, kInf);
    std::vector<std::int32_t> parent(n, -1);
    std::vector<std::uint8_t> closed(n, 0);
    std::priority_queue<HeapEntry, std::vector<HeapEntry>, HeapEntryAfter> open;

    PlanResult result;
    std::uint64_t labeled = 0;
    const auto sample = [&] {
        const std::size_t bytes =
            labeled * kSearchNodeBytes + open.size() * kHeapEntryBytes;
        if (bytes > result.peak_bytes) result.peak_bytes = bytes;
    };

    g[grid.index(start)] = 0.0;
    ++labeled;
    open.push({heuristic(start), start.y, start.x});
    sample();

    std::array<CellCoord, 8> nbrs;
    bool found = false;
    while (!open.empty()) {
        const HeapEntry top = open.top();
        open.pop();
        const CellCoord u{top.x, top.y};
        const std::size_t ui = grid.index(u);
        if (closed[ui]) continue;  // stale lazy-deleted entry
        closed[ui] = 1;
        if (u == goal) {
            found = true;
            break;
        }
        ++result.expanded_or_sampled;

        const int count = neighbors_into(grid, u, nbrs);
        for (int i = 0; i < count; ++i) {
            const CellCoord v = nbrs[i];
            const std::size_t vi = grid.index(v);
            if (closed[vi]) continue;
            const double cand = g[ui] + edge_cost(u, v);
            if (cand < g[vi]) {
                if (g[vi] == kInf) ++labeled;
                g[vi] = cand;
                parent[vi] = static_cast<std::int32_t>(ui);
                open.push({cand + heuristic(v), v.y, v.x});
                sample();
            }
        }
    }
    result.iterations_used = result.expanded_or_sampled;
    if (!found) return result;

    Path path;
    path.total_cost = g[grid.index(goal)];
    std::size_t cur = grid.index(goal);
    while (true) {
        path.cells.push_back({static_cast<int>(cur % grid.width()),
                              static_cast<int>(cur / grid.width())});
        if (parent[cur] < 0) break;
        cur = static_cast<std::size_t>(parent[cur]);
    }
    std::reverse(path.cells.begin(), path.cells.end());
    result.path = std::move(path);
    return result;
}

}  // namespace gridplan::detail
