#include "gridplan/mapgen.hpp"

#include <algorithm>
#include <stdexcept>

#include "gridplan/rng.hpp"

namespace gridplan {

namespace {

RasterGrid blank(int size) {
    if (size < 2) throw std::invalid_argument("map size must be at least 2");
    RasterGrid g;
    g.width = size;
    g.height = size;
    g.bit_depth = 8;
    g.values.assign(static_cast<std::size_t>(size) * size, 0);
    return g;
}

// In-place 3x3 box blur; edge windows shrink to their in-bounds part.
void box_blur(RasterGrid& g) {
    std::vector<std::uint16_t> src(g.values);
    for (int y = 0; y < g.height; ++y) {
        for (int x = 0; x < g.width; ++x) {
            unsigned sum = 0;
            unsigned count = 0;
            for (int dy = -1; dy <= 1; ++dy) {
                for (int dx = -1; dx <= 1; ++dx) {
                    const int nx = x + dx;
                    const int ny = y + dy;
                    if (nx < 0 || ny < 0 || nx >= g.width || ny >= g.height) continue;
                    sum += src[static_cast<std::size_t>(ny) * g.width + nx];
                    ++count;
                }
            }
            g.values[static_cast<std::size_t>(y) * g.width + x] =
                static_cast<std::uint16_t>(sum / count);
        }
    }
}

}  // namespace

RasterGrid gen_uniform(int size) {
    RasterGrid g = blank(size);
    std::fill(g.values.begin(), g.values.end(), 1);
    return g;
}

RasterGrid gen_random_weights(int size, std::uint64_t seed) {
    RasterGrid g = blank(size);
    Rng rng(seed);
    for (auto& v : g.values) {
        if (rng.next_below(5) == 0) {
            v = 0;
        } else {
            v = static_cast<std::uint16_t>(1 + rng.next_below(9));
        }
    }
    return g;
}

RasterGrid gen_ridge(int size) {
    RasterGrid g = blank(size);
    const int half = std::max(1, (size - 1) / 2);
    for (int y = 0; y < size; ++y) {
        const int d = std::min(y, size - 1 - y);
        const std::uint16_t v = static_cast<std::uint16_t>(1 + (199 * d) / half);
        for (int x = 0; x < size; ++x)
            g.values[static_cast<std::size_t>(y) * size + x] = v;
    }
    return g;
}

RasterGrid gen_smoothed_noise(int size, std::uint64_t seed) {
    RasterGrid g = blank(size);
    Rng rng(seed);
    for (auto& v : g.values) v = static_cast<std::uint16_t>(rng.next_below(256));
    box_blur(g);
    box_blur(g);
    for (auto& v : g.values) v = std::max<std::uint16_t>(v, 1);
    return g;
}

}  // namespace gridplan
