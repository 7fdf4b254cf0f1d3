#pragma once

#include <cmath>
#include <cstdint>

namespace gridplan {

// Pixel coordinate: x is the column, y is the row.
struct CellCoord {
    int x = 0;
    int y = 0;

    friend bool operator==(CellCoord a, CellCoord b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(CellCoord a, CellCoord b) { return !(a == b); }
};

inline double euclid(CellCoord a, CellCoord b) {
    const double dx = static_cast<double>(a.x) - b.x;
    const double dy = static_cast<double>(a.y) - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

inline double euclid_sq(CellCoord a, CellCoord b) {
    const double dx = static_cast<double>(a.x) - b.x;
    const double dy = static_cast<double>(a.y) - b.y;
    return dx * dx + dy * dy;
}

}  // namespace gridplan
