#pragma once

#include <cstdint>
#include <random>

#include "frobpencil/numeric/types.hpp"

namespace frob::numeric {

/// Seeded generator whose output does not depend on the standard library's
/// distribution implementations, so reports are reproducible across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    cplx complex_in_box(double half_width) {
        const double re = uniform(-half_width, half_width);
        return {re, uniform(-half_width, half_width)};
    }
    /// Uniform integer in [lo, hi].
    int integer(int lo, int hi) { return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1)); }
    std::uint64_t next() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace frob::numeric
