#pragma once

#include <cstdint>
#include <random>

namespace gridplan {

// Seeded generator with hand-rolled draws. std::mt19937_64 output is pinned
// by the standard and the draw functions avoid std::*_distribution, so the
// same seed yields the same stream on every platform and build.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1).
    double next_double() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n). n must be > 0.
    std::uint64_t next_below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(engine_()) * n) >> 64);
    }

  private:
    std::mt19937_64 engine_;
};

}  // namespace gridplan
