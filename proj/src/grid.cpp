#include "gridplan/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "cost_detail.hpp"

namespace gridplan {

namespace {

std::string cell_str(CellCoord c) {
    return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")";
}

// Offsets in scan order NW, N, NE, W, E, SW, S, SE.
constexpr int kDx[8] = {-1, 0, 1, -1, 1, -1, 0, 1};
constexpr int kDy[8] = {-1, -1, -1, 0, 0, 1, 1, 1};

// A diagonal step also needs both orthogonal companion cells passable, so a
// path cannot slip between two touching walls.
bool corner_ok(const WeightedGrid& grid, CellCoord u, int dx, int dy) {
    if (dx == 0 || dy == 0) return true;
    return grid.passable({u.x + dx, u.y}) && grid.passable({u.x, u.y + dy});
}

// Validates u -> v as a single legal move.
void check_step(const WeightedGrid& grid, CellCoord u, CellCoord v) {
    if (!grid.in_bounds(u) || !grid.in_bounds(v))
        throw std::invalid_argument("edge " + cell_str(u) + " -> " + cell_str(v) +
                                    " leaves the grid");
    const int dx = v.x - u.x;
    const int dy = v.y - u.y;
    if (dx == 0 && dy == 0)
        throw std::invalid_argument("edge " + cell_str(u) + " -> " + cell_str(v) +
                                    " is degenerate");
    if (dx < -1 || dx > 1 || dy < -1 || dy > 1)
        throw std::invalid_argument("cells " + cell_str(u) + " and " + cell_str(v) +
                                    " are not neighbors");
    if (!grid.passable(u) || !grid.passable(v))
        throw std::invalid_argument("edge " + cell_str(u) + " -> " + cell_str(v) +
                                    " touches an impassable cell");
    if (!corner_ok(grid, u, dx, dy))
        throw std::invalid_argument("diagonal " + cell_str(u) + " -> " + cell_str(v) +
                                    " cuts a blocked corner");
}

}  // namespace

namespace detail {

double edge_cost_3d_fast(const WeightedGrid& grid, const ElevationField& elev, CellCoord u,
                         CellCoord v, const Cost3DParams& p, const double* gradient_at_v) {
    const double mean = 0.5 * (grid.weight(u) + grid.weight(v));
    double len = step_len(u, v);
    const double rise = p.kappa * (elev.at(v) - elev.at(u)) / elev.horizontal_resolution;
    if (rise != 0.0) len = std::sqrt((len == 1.0 ? 1.0 : 2.0) + rise * rise);
    double cost = len * mean;
    if (p.gradient_penalty != 0.0) {
        const double g =
            gradient_at_v ? *gradient_at_v : avg_gradient(elev, v, p.gradient_window);
        cost *= 1.0 + p.gradient_penalty * g;
    }
    return cost;
}

double dist_3d(const ElevationField& elev, const Cost3DParams& p, CellCoord a, CellCoord b) {
    const double rise = p.kappa * (elev.at(b) - elev.at(a)) / elev.horizontal_resolution;
    if (rise == 0.0) return euclid(a, b);
    return std::sqrt(euclid_sq(a, b) + rise * rise);
}

}  // namespace detail

WeightedGrid::WeightedGrid(int width, int height, std::vector<double> weights,
                           std::vector<std::uint8_t> passable)
    : width_(width), height_(height), weights_(std::move(weights)),
      passable_(std::move(passable)) {
    if (width_ < 1 || height_ < 1)
        throw std::invalid_argument("grid dimensions must be at least 1x1");
    const std::size_t n = static_cast<std::size_t>(width_) * height_;
    if (weights_.size() != n || passable_.size() != n)
        throw std::invalid_argument("grid vectors do not match width*height");

    double min_w = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(weights_[i]) || weights_[i] < 0.0)
            throw std::invalid_argument("weight at index " + std::to_string(i) +
                                        " must be finite and non-negative");
        if (passable_[i]) {
            if (weights_[i] <= 0.0) {
                const CellCoord c{static_cast<int>(i % width_), static_cast<int>(i / width_)};
                throw std::invalid_argument("passable cell " + cell_str(c) +
                                            " has non-positive weight");
            }
            min_w = std::min(min_w, weights_[i]);
            ++passable_count_;
        }
    }
    min_passable_weight_ = passable_count_ ? min_w : 0.0;
}

void ElevationField::validate() const {
    if (width < 1 || height < 1)
        throw std::invalid_argument("elevation dimensions must be at least 1x1");
    if (z.size() != static_cast<std::size_t>(width) * height)
        throw std::invalid_argument("elevation value count does not match width*height");
    if (!(horizontal_resolution > 0.0) || !std::isfinite(horizontal_resolution))
        throw std::invalid_argument("horizontal_resolution must be positive and finite");
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (!std::isfinite(z[i]))
            throw std::invalid_argument("elevation at index " + std::to_string(i) +
                                        " is not finite");
    }
}

void Cost3DParams::validate() const {
    if (!(kappa >= 0.0) || !std::isfinite(kappa))
        throw std::invalid_argument("kappa must be non-negative and finite");
    if (gradient_window < 1 || gradient_window % 2 == 0)
        throw std::invalid_argument("gradient_window must be odd and at least 1");
    if (!(gradient_penalty >= 0.0) || !std::isfinite(gradient_penalty))
        throw std::invalid_argument("gradient_penalty must be non-negative and finite");
}

WeightedGrid from_raster_weights(const RasterGrid& raster, std::uint32_t impassable_value,
                                 double scale) {
    raster.validate();
    if (!(scale > 0.0) || !std::isfinite(scale))
        throw std::invalid_argument("scale must be positive and finite");
    const std::size_t n = raster.values.size();
    std::vector<double> weights(n, 0.0);
    std::vector<std::uint8_t> passable(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (raster.values[i] == impassable_value) continue;
        weights[i] = raster.values[i] * scale;
        passable[i] = 1;
    }
    return WeightedGrid(raster.width, raster.height, std::move(weights), std::move(passable));
}

ElevationField elevation_from_raster(const RasterGrid& raster, double z_scale,
                                     double horizontal_resolution, bool median_filter) {
    raster.validate();
    if (!std::isfinite(z_scale)) throw std::invalid_argument("z_scale must be finite");

    ElevationField field;
    field.width = raster.width;
    field.height = raster.height;
    field.horizontal_resolution = horizontal_resolution;
    field.z.resize(raster.values.size());

    std::vector<std::uint16_t> samples(raster.values);
    if (median_filter) {
        // 3x3 median; edge windows shrink to their in-bounds part.
        std::vector<std::uint16_t> window;
        window.reserve(9);
        for (int y = 0; y < raster.height; ++y) {
            for (int x = 0; x < raster.width; ++x) {
                window.clear();
                for (int dy = -1; dy <= 1; ++dy) {
                    for (int dx = -1; dx <= 1; ++dx) {
                        const int nx = x + dx;
                        const int ny = y + dy;
                        if (nx < 0 || ny < 0 || nx >= raster.width || ny >= raster.height)
                            continue;
                        window.push_back(raster.at(nx, ny));
                    }
                }
                std::nth_element(window.begin(), window.begin() + window.size() / 2,
                                 window.end());
                samples[static_cast<std::size_t>(y) * raster.width + x] =
                    window[window.size() / 2];
            }
        }
    }
    for (std::size_t i = 0; i < samples.size(); ++i) field.z[i] = samples[i] * z_scale;
    field.validate();
    return field;
}

std::vector<CellCoord> neighbors(const WeightedGrid& grid, CellCoord c) {
    std::array<CellCoord, 8> buf;
    const int n = neighbors_into(grid, c, buf);
    return std::vector<CellCoord>(buf.begin(), buf.begin() + n);
}

int neighbors_into(const WeightedGrid& grid, CellCoord c, std::array<CellCoord, 8>& out) {
    if (!grid.in_bounds(c))
        throw std::invalid_argument("cell " + cell_str(c) + " is out of bounds");
    int n = 0;
    for (int i = 0; i < 8; ++i) {
        const CellCoord v{c.x + kDx[i], c.y + kDy[i]};
        if (!grid.in_bounds(v) || !grid.passable(v)) continue;
        if (!corner_ok(grid, c, kDx[i], kDy[i])) continue;
        out[n++] = v;
    }
    return n;
}

double edge_cost_2d(const WeightedGrid& grid, CellCoord u, CellCoord v) {
    check_step(grid, u, v);
    return detail::edge_cost_2d_fast(grid, u, v);
}

double edge_cost_3d(const WeightedGrid& grid, const ElevationField& elev, CellCoord u,
                    CellCoord v, const Cost3DParams& p) {
    if (elev.width != grid.width() || elev.height != grid.height())
        throw std::invalid_argument("elevation field dimensions do not match the grid");
    p.validate();
    check_step(grid, u, v);
    return detail::edge_cost_3d_fast(grid, elev, u, v, p);
}

double avg_gradient(const ElevationField& elev, CellCoord c, int k) {
    if (k < 1 || k % 2 == 0)
        throw std::invalid_argument("gradient window must be odd and at least 1");
    if (c.x < 0 || c.y < 0 || c.x >= elev.width || c.y >= elev.height)
        throw std::invalid_argument("cell " + cell_str(c) + " is out of bounds");
    if (k == 1) return 0.0;

    const int r = k / 2;
    const double zc = elev.at(c);
    double sum = 0.0;
    int count = 0;
    for (int dy = -r; dy <= r; ++dy) {
        for (int dx = -r; dx <= r; ++dx) {
            if (dx == 0 && dy == 0) continue;
            const CellCoord n{c.x + dx, c.y + dy};
            if (n.x < 0 || n.y < 0 || n.x >= elev.width || n.y >= elev.height) continue;
            const double dist = std::sqrt(double(dx) * dx + double(dy) * dy) *
                                elev.horizontal_resolution;
            sum += std::abs(elev.at(n) - zc) / dist;
            ++count;
        }
    }
    return count ? sum / count : 0.0;
}

std::vector<CellCoord> bresenham_line(CellCoord a, CellCoord b) {
    std::vector<CellCoord> out;
    const int dx = std::abs(b.x - a.x);
    const int dy = -std::abs(b.y - a.y);
    const int sx = a.x < b.x ? 1 : -1;
    const int sy = a.y < b.y ? 1 : -1;
    int err = dx + dy;
    CellCoord c = a;
    out.reserve(static_cast<std::size_t>(std::max(dx, -dy)) + 1);
    while (true) {
        out.push_back(c);
        if (c == b) break;
        const int e2 = 2 * err;
        if (e2 >= dy) {
            err += dy;
            c.x += sx;
        }
        if (e2 <= dx) {
            err += dx;
            c.y += sy;
        }
    }
    return out;
}

SegmentCost segment_cost(const WeightedGrid& grid, CellCoord a, CellCoord b,
                         const ElevationField* elev, const Cost3DParams* p) {
    if (!grid.in_bounds(a) || !grid.in_bounds(b))
        throw std::invalid_argument("segment " + cell_str(a) + " -> " + cell_str(b) +
                                    " leaves the grid");
    if (elev) {
        if (elev->width != grid.width() || elev->height != grid.height())
            throw std::invalid_argument("elevation field dimensions do not match the grid");
        if (p) p->validate();
    }
    static const Cost3DParams default_params;

    SegmentCost result;
    std::vector<CellCoord> cells = bresenham_line(a, b);
    for (const CellCoord c : cells) {
        if (!grid.passable(c)) {
            result.blocked = true;
            return result;
        }
    }
    for (std::size_t i = 1; i < cells.size(); ++i) {
        const CellCoord u = cells[i - 1];
        const CellCoord v = cells[i];
        const int dx = v.x - u.x;
        const int dy = v.y - u.y;
        if (!corner_ok(grid, u, dx, dy)) {
            result.blocked = true;
            result.cost = 0.0;
            return result;
        }
        if (elev) {
            result.cost +=
                detail::edge_cost_3d_fast(grid, *elev, u, v, p ? *p : default_params);
        } else {
            result.cost += detail::edge_cost_2d_fast(grid, u, v);
        }
    }
    result.cells = std::move(cells);
    return result;
}

double path_cost(const WeightedGrid& grid, const std::vector<CellCoord>& cells,
                 const ElevationField* elev, const Cost3DParams* p) {
    if (cells.empty()) throw std::invalid_argument("path has no cells");
    if (elev && (elev->width != grid.width() || elev->height != grid.height()))
        throw std::invalid_argument("elevation field dimensions do not match the grid");
    static const Cost3DParams default_params;

    if (!grid.in_bounds(cells[0]))
        throw std::invalid_argument("cell " + cell_str(cells[0]) + " is out of bounds");
    if (!grid.passable(cells[0]))
        throw std::invalid_argument("cell " + cell_str(cells[0]) + " is impassable");

    double total = 0.0;
    for (std::size_t i = 1; i < cells.size(); ++i) {
        const CellCoord u = cells[i - 1];
        const CellCoord v = cells[i];
        try {
            if (elev) {
                total += edge_cost_3d(grid, *elev, u, v, p ? *p : default_params);
            } else {
                total += edge_cost_2d(grid, u, v);
            }
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("path step " + std::to_string(i - 1) + " -> " +
                                        std::to_string(i) + ": " + e.what());
        }
    }
    return total;
}

}  // namespace gridplan
