#pragma once

// Independent reference implementations the tests compare the library
// against.  Deliberately simple and slow: the advection term is evaluated by
// pointwise multiplication on a fine physical-space grid (no convolution),
// and time stepping by the classical Runge-Kutta scheme.

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "ghostlab/dynamics.hpp"
#include "ghostlab/spectral.hpp"

namespace oracle {

using ghostlab::Complex;
using ghostlab::ScalarAmplitudeField;
using ghostlab::SpectralField;
using ghostlab::WaveVector;

/// B(u, v) = Leray projection of (u . grad) v, via an N x N physical grid.
/// N must exceed the largest frequency present in the pointwise product so
/// the discrete transform is alias-free (N = 32 covers |k|^2 <= 25 inputs).
inline SpectralField physical_space_bilinear(const SpectralField& u, const SpectralField& v,
                                             std::int64_t out_radius_sq, int N = 32) {
    const double tau = 8.0 * std::atan(1.0);
    const std::size_t cells = std::size_t(N) * std::size_t(N);
    std::vector<Complex> u1(cells), u2(cells), d1v1(cells), d1v2(cells), d2v1(cells),
        d2v2(cells);

    auto phase = [&](WaveVector k, int m, int n) {
        return std::polar(1.0, tau * double(k.k1 * m + k.k2 * n) / double(N));
    };
    for (const auto& [k, c] : u.modes())
        for (int m = 0; m < N; ++m)
            for (int n = 0; n < N; ++n) {
                Complex ph = phase(k, m, n);
                u1[std::size_t(m) * N + n] += c.x * ph;
                u2[std::size_t(m) * N + n] += c.y * ph;
            }
    for (const auto& [k, c] : v.modes()) {
        Complex ik1(0.0, double(k.k1)), ik2(0.0, double(k.k2));
        for (int m = 0; m < N; ++m)
            for (int n = 0; n < N; ++n) {
                Complex ph = phase(k, m, n);
                std::size_t idx = std::size_t(m) * N + n;
                d1v1[idx] += ik1 * c.x * ph;
                d1v2[idx] += ik1 * c.y * ph;
                d2v1[idx] += ik2 * c.x * ph;
                d2v2[idx] += ik2 * c.y * ph;
            }
    }

    std::vector<Complex> w1(cells), w2(cells);
    for (std::size_t i = 0; i < cells; ++i) {
        w1[i] = u1[i] * d1v1[i] + u2[i] * d2v1[i];
        w2[i] = u1[i] * d1v2[i] + u2[i] * d2v2[i];
    }

    // Scalar amplitude of the projected product: alpha(k) = (w_hat . k_perp) / (i |k|).
    // Pairing with k_perp discards the gradient part, which is exactly the
    // Leray projection for a 2d field.
    std::vector<std::pair<WaveVector, Complex>> amps;
    int kmax = int(std::sqrt(double(out_radius_sq))) + 1;
    for (int k1 = 0; k1 <= kmax; ++k1)
        for (int k2 = (k1 == 0 ? 1 : -kmax); k2 <= kmax; ++k2) {
            WaveVector k{k1, k2};
            if (k.norm_sq() == 0 || k.norm_sq() > out_radius_sq) continue;
            Complex s1{}, s2{};
            for (int m = 0; m < N; ++m)
                for (int n = 0; n < N; ++n) {
                    Complex ph = std::conj(phase(k, m, n));
                    std::size_t idx = std::size_t(m) * N + n;
                    s1 += w1[idx] * ph;
                    s2 += w2[idx] * ph;
                }
            s1 /= double(cells);
            s2 /= double(cells);
            Complex along_perp = s1 * double(-k.k2) + s2 * double(k.k1);
            Complex alpha = along_perp / (Complex(0.0, 1.0) * std::sqrt(double(k.norm_sq())));
            amps.emplace_back(k, alpha);
        }
    return SpectralField::from_scalar(ScalarAmplitudeField::make(amps), out_radius_sq);
}

/// Classical fourth-order Runge-Kutta step on the same right-hand side.
inline SpectralField rk4_step(const SpectralField& u, const ghostlab::SystemSpec& spec,
                              double dt) {
    SpectralField k1 = ghostlab::rhs(u, spec);
    SpectralField k2 = ghostlab::rhs(u + k1 * (dt / 2.0), spec);
    SpectralField k3 = ghostlab::rhs(u + k2 * (dt / 2.0), spec);
    SpectralField k4 = ghostlab::rhs(u + k3 * dt, spec);
    return u + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (dt / 6.0);
}

}  // namespace oracle
