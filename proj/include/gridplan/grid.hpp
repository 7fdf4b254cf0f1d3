#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gridplan/cell.hpp"
#include "gridplan/raster.hpp"

namespace gridplan {

// Per-pixel traversal weights with an impassable mask. Immutable after
// construction; shareable across concurrent planner runs.
class WeightedGrid {
  public:
    WeightedGrid(int width, int height, std::vector<double> weights,
                 std::vector<std::uint8_t> passable);

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t cell_count() const { return weights_.size(); }

    bool in_bounds(CellCoord c) const {
        return c.x >= 0 && c.y >= 0 && c.x < width_ && c.y < height_;
    }
    std::size_t index(CellCoord c) const {
        return static_cast<std::size_t>(c.y) * width_ + c.x;
    }
    bool passable(CellCoord c) const { return passable_[index(c)] != 0; }
    double weight(CellCoord c) const { return weights_[index(c)]; }

    // Smallest weight over passable cells; 0 if nothing is passable.
    double min_passable_weight() const { return min_passable_weight_; }
    std::size_t passable_count() const { return passable_count_; }

  private:
    int width_;
    int height_;
    std::vector<double> weights_;
    std::vector<std::uint8_t> passable_;
    double min_passable_weight_ = 0.0;
    std::size_t passable_count_ = 0;
};

// Per-pixel elevation in meters.
struct ElevationField {
    int width = 0;
    int height = 0;
    std::vector<double> z;             // meters, row-major
    double horizontal_resolution = 1.0;  // meters per pixel

    double at(CellCoord c) const {
        return z[static_cast<std::size_t>(c.y) * width + c.x];
    }
    void validate() const;
};

struct Cost3DParams {
    double kappa = 1.0;          // vertical exaggeration on dz
    int gradient_window = 3;     // odd window for avg_gradient
    double gradient_penalty = 0.0;  // multiplier on the average-gradient term

    void validate() const;
};

struct Path {
    std::vector<CellCoord> cells;
    double total_cost = 0.0;
};

// Maps raster values to weights: weight = value * scale, except cells whose
// raster value equals impassable_value, which become impassable.
WeightedGrid from_raster_weights(const RasterGrid& raster, std::uint32_t impassable_value,
                                 double scale);

ElevationField elevation_from_raster(const RasterGrid& raster, double z_scale = 1.0,
                                     double horizontal_resolution = 1.0,
                                     bool median_filter = false);

// Passable in-bounds Moore neighbors of c in scan order
// (NW, N, NE, W, E, SW, S, SE). Diagonal steps require both orthogonal
// companion cells passable, so paths cannot cut corners through walls.
std::vector<CellCoord> neighbors(const WeightedGrid& grid, CellCoord c);

// Fixed-array variant for hot loops; returns the neighbor count.
int neighbors_into(const WeightedGrid& grid, CellCoord c, std::array<CellCoord, 8>& out);

// Step length (1 or sqrt(2)) times the mean endpoint weight. Throws on
// non-neighbor pairs, impassable endpoints, and corner-cutting diagonals.
double edge_cost_2d(const WeightedGrid& grid, CellCoord u, CellCoord v);

// Weighted 3D step: sqrt(L^2 + (kappa*dz/res)^2) * mean weight, optionally
// scaled by (1 + gradient_penalty * avg_gradient at v). Symmetric when
// gradient_penalty is 0.
double edge_cost_3d(const WeightedGrid& grid, const ElevationField& elev, CellCoord u,
                    CellCoord v, const Cost3DParams& p);

// Mean of |z(n) - z(c)| / (pixel distance * resolution) over the in-bounds
// k x k window around c, center excluded. k = 1 yields 0.
double avg_gradient(const ElevationField& elev, CellCoord c, int k);

// Cells of the line a -> b, rasterized in that direction (not symmetrized).
std::vector<CellCoord> bresenham_line(CellCoord a, CellCoord b);

struct SegmentCost {
    bool blocked = false;
    double cost = 0.0;
    std::vector<CellCoord> cells;  // empty when blocked
};

// Rasterizes a -> b and sums edge costs over consecutive cells. Blocked (a
// result, not an error) when any cell is impassable or a diagonal step cuts
// a corner.
SegmentCost segment_cost(const WeightedGrid& grid, CellCoord a, CellCoord b,
                         const ElevationField* elev = nullptr,
                         const Cost3DParams* p = nullptr);

// Sum of edge costs over consecutive cells; throws on the first pair that is
// not a valid move.
double path_cost(const WeightedGrid& grid, const std::vector<CellCoord>& cells,
                 const ElevationField* elev = nullptr, const Cost3DParams* p = nullptr);

}  // namespace gridplan
