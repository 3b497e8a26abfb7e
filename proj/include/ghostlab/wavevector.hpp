#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace ghostlab {

/// Integer lattice wave vector k = (k1, k2) on the 2-torus of period 2*pi.
struct WaveVector {
    int k1 = 0;
    int k2 = 0;

    friend auto operator<=>(const WaveVector&, const WaveVector&) = default;

    WaveVector operator-() const { return {-k1, -k2}; }
    WaveVector operator+(WaveVector o) const { return {k1 + o.k1, k2 + o.k2}; }
    WaveVector operator-(WaveVector o) const { return {k1 - o.k1, k2 - o.k2}; }

    /// Rotation by +90 degrees, k_perp = (-k2, k1).
    WaveVector perp() const { return {-k2, k1}; }

    std::int64_t dot(WaveVector o) const {
        return std::int64_t(k1) * o.k1 + std::int64_t(k2) * o.k2;
    }
    std::int64_t norm_sq() const { return dot(*this); }
    bool is_zero() const { return k1 == 0 && k2 == 0; }

    std::string str() const {
        return "(" + std::to_string(k1) + "," + std::to_string(k2) + ")";
    }
};

}  // namespace ghostlab
