#pragma once

#include <cstdint>

namespace ghostlab {

/// SplitMix64 generator.  Used instead of <random> engines plus distributions
/// so that seeded output streams are identical across standard libraries,
/// which keeps exported files byte-stable.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double next_unit() { return double(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform double in [-1, 1).
    double next_symmetric() { return 2.0 * next_unit() - 1.0; }

    /// Derive an independent stream for sub-task `index`.
    Rng fork(std::uint64_t index) const {
        Rng r(state_ ^ (0xd1342543de82ef95ULL * (index + 1)));
        r.next_u64();
        return r;
    }

private:
    std::uint64_t state_;
};

}  // namespace ghostlab
