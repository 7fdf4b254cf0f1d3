#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gridplan/cell.hpp"

namespace gridplan {

// 8- or 16-bit grayscale raster, row-major.
struct RasterGrid {
    int width = 0;
    int height = 0;
    int bit_depth = 8;  // 8 or 16
    std::vector<std::uint16_t> values;

    std::uint32_t max_value() const { return bit_depth == 8 ? 255u : 65535u; }
    std::uint16_t at(int x, int y) const {
        return values[static_cast<std::size_t>(y) * width + x];
    }
    // Throws std::invalid_argument on any broken invariant (dimensions,
    // value-vs-depth range, size mismatch).
    void validate() const;
};

enum class RasterFormat { Pgm, Png };

// Reads a PGM (P2 or P5) or single-channel PNG file, 8- or 16-bit.
// Pixel values are taken verbatim, no rescaling.
RasterGrid load_grayscale_raster(const std::string& path);

void save_grayscale_raster(const RasterGrid& grid, const std::string& path,
                           RasterFormat format);

// .png -> Png, anything else -> Pgm
RasterFormat raster_format_for_path(std::string_view path);

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;
    friend bool operator==(Rgb a, Rgb b) { return a.r == b.r && a.g == b.g && a.b == b.b; }
};

struct OverlayLayer {
    std::vector<CellCoord> cells;
    Rgb color;
};

struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;  // r,g,b per pixel, row-major

    Rgb at(int x, int y) const {
        const std::size_t i = (static_cast<std::size_t>(y) * width + x) * 3;
        return {pixels[i], pixels[i + 1], pixels[i + 2]};
    }
};

// Replicates the grayscale base into RGB (16-bit bases are scaled to 8 bits)
// and paints every cell of each layer in its color; later layers overdraw
// earlier ones. Out-of-bounds cells raise std::out_of_range naming the cell.
RgbImage render_overlay(const RasterGrid& base, const std::vector<OverlayLayer>& layers);

void save_png_rgb(const RgbImage& image, const std::string& path);

// Figure palette: astar/astar3d blue, dijkstra/dijkstra3d gold,
// rrtstar/rrtconnect red, niaco/niaco3d light blue. Unknown ids map to magenta.
Rgb planner_color(std::string_view planner);

}  // namespace gridplan
