#pragma once

#include <cstdint>

#include "gridplan/raster.hpp"

namespace gridplan {

// Synthetic test maps; all deterministic for a given seed. size >= 2.

// All-one weights.
RasterGrid gen_uniform(int size);

// Integer weights 1..9 with ~20% impassable (value 0) cells.
RasterGrid gen_random_weights(int size, std::uint64_t seed);

// Elevation band: a high ridge across the middle rows.
RasterGrid gen_ridge(int size);

// Seeded noise box-blurred twice, floored at 1 so every cell stays passable.
RasterGrid gen_smoothed_noise(int size, std::uint64_t seed);

}  // namespace gridplan
