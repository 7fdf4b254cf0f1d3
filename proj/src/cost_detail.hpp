#pragma once

#include <cmath>
#include <numbers>

#include "gridplan/grid.hpp"

// Unchecked cost kernels shared by the public edge-cost functions and the
// planners' inner loops. Keeping one arithmetic path per formula is what
// makes the flat-elevation reduction to the 2D planners exact, not just
// approximate.
namespace gridplan::detail {

inline double step_len(CellCoord u, CellCoord v) {
    return (u.x != v.x && u.y != v.y) ? std::numbers::sqrt2_v<double> : 1.0;
}

// u and v must already be validated passable neighbors.
inline double edge_cost_2d_fast(const WeightedGrid& grid, CellCoord u, CellCoord v) {
    const double mean = 0.5 * (grid.weight(u) + grid.weight(v));
    return step_len(u, v) * mean;
}

// gradient_at_v, when non-null, substitutes for the avg_gradient call; the
// caller guarantees it holds that exact value (memoization).
double edge_cost_3d_fast(const WeightedGrid& grid, const ElevationField& elev, CellCoord u,
                         CellCoord v, const Cost3DParams& p,
                         const double* gradient_at_v = nullptr);

// Pixel distance with the kappa-scaled elevation delta folded in; collapses
// to the plain 2D distance when the delta is zero.
double dist_3d(const ElevationField& elev, const Cost3DParams& p, CellCoord a, CellCoord b);

}  // namespace gridplan::detail
