#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "ghostlab/errors.hpp"
#include "ghostlab/wavevector.hpp"

namespace ghostlab {

using Complex = std::complex<double>;

/// Value of one Fourier coefficient, a vector in C^2.
struct ModeCoeff {
    Complex x{0.0, 0.0};
    Complex y{0.0, 0.0};

    ModeCoeff operator+(const ModeCoeff& o) const { return {x + o.x, y + o.y}; }
    ModeCoeff operator-(const ModeCoeff& o) const { return {x - o.x, y - o.y}; }
    ModeCoeff operator*(Complex c) const { return {c * x, c * y}; }
    ModeCoeff operator*(double c) const { return {c * x, c * y}; }
    ModeCoeff conj() const { return {std::conj(x), std::conj(y)}; }

    /// Bilinear (unconjugated) pairing with an integer vector.
    Complex dot_wave(WaveVector k) const { return x * double(k.k1) + y * double(k.k2); }

    double norm_sq() const { return std::norm(x) + std::norm(y); }
};

/// Scalar amplitude representation of a divergence-free field:
/// u_hat(k) = i * alpha(k) * k_perp / |k|.  Reality of the velocity field
/// corresponds to alpha(-k) = conj(alpha(k)).
class ScalarAmplitudeField {
public:
    ScalarAmplitudeField() = default;

    /// Validates reality pair-by-pair (tolerance 1e-12 relative); a missing
    /// partner -k is filled in as conj(alpha(k)).  k = 0 is rejected.
    static ScalarAmplitudeField make(const std::vector<std::pair<WaveVector, Complex>>& amplitudes);

    const std::map<WaveVector, Complex>& amplitudes() const { return amps_; }
    Complex amplitude(WaveVector k) const;
    std::size_t size() const { return amps_.size(); }

private:
    friend class SpectralField;
    std::map<WaveVector, Complex> amps_;
};

/// Truncated divergence-free velocity field in Fourier representation.
/// Invariants (enforced on construction, preserved by all operations):
///   * u_hat(-k) = conj(u_hat(k)) for every stored mode;
///   * k . u_hat(k) = 0;
///   * |k|^2 <= radius_sq for every stored mode, and k != 0.
class SpectralField {
public:
    SpectralField() = default;

    static SpectralField zero(std::int64_t radius_sq);

    /// Validating constructor from explicit C^2 coefficients.
    static SpectralField make(const std::vector<std::pair<WaveVector, ModeCoeff>>& entries,
                              std::int64_t radius_sq);

    /// Lift scalar amplitudes to velocity coefficients.  The result is
    /// divergence-free by construction.
    static SpectralField from_scalar(const ScalarAmplitudeField& a, std::int64_t radius_sq);

    /// Project velocity coefficients back to scalar amplitudes,
    /// alpha(k) = -i * u_hat(k) . k_perp / |k|.
    ScalarAmplitudeField to_scalar() const;

    std::int64_t radius_sq() const { return radius_sq_; }
    const std::map<WaveVector, ModeCoeff>& modes() const { return coeffs_; }
    std::size_t size() const { return coeffs_.size(); }
    ModeCoeff coeff(WaveVector k) const;

    bool all_finite() const;

    SpectralField operator+(const SpectralField& o) const;
    SpectralField operator-(const SpectralField& o) const;
    SpectralField operator*(double c) const;

private:
    friend SpectralField apply_stokes_power(const SpectralField&, double);
    friend SpectralField eigenspace_project(const SpectralField&, std::int64_t);
    friend SpectralField bilinear(const SpectralField&, const SpectralField&, std::int64_t);

    void insert_unchecked(WaveVector k, ModeCoeff c) { coeffs_[k] = c; }

    std::int64_t radius_sq_ = 0;
    std::map<WaveVector, ModeCoeff> coeffs_;
};

/// Single-eigenvector forcing specification.  `pattern` holds scalar
/// amplitudes restricted to the shell |k|^2 = lambda; it is rescaled so the
/// resulting force has norm `magnitude`.  An empty pattern selects the
/// default pattern alpha(k) = 1 on the whole shell.
struct EigenforceSpec {
    std::int64_t lambda = 0;
    std::map<WaveVector, Complex> pattern;
    double magnitude = 1.0;
};

/// All lattice vectors with |k|^2 = mu, sorted.
std::vector<WaveVector> shell_vectors(std::int64_t mu);

/// Whether mu > 0 is an eigenvalue of the Stokes operator, i.e. a sum of two
/// integer squares.
bool in_stokes_spectrum(std::int64_t mu);

/// (A^s u)_hat(k) = |k|^(2s) u_hat(k).
SpectralField apply_stokes_power(const SpectralField& u, double s);

/// L^2 pairing (u, v) = Re sum_k u_hat(k) . conj(v_hat(k)).  The 2*pi
/// normalization of the physical domain is absorbed into the coefficients.
double inner(const SpectralField& u, const SpectralField& v);

/// |A^s u| = sqrt(sum_k |k|^(4s) |u_hat(k)|^2).
double norm_as(const SpectralField& u, double s);

/// Helmholtz-projected convolution
///   B_hat(u,v)(k) = i sum_j (u_hat(k-j) . j) [ v_hat(j) - (v_hat(j).k) k / |k|^2 ].
/// Exact double loop over the supports; modes with |k|^2 > out_radius_sq are
/// discarded.  The two-argument overload keeps every generated mode.
SpectralField bilinear(const SpectralField& u, const SpectralField& v, std::int64_t out_radius_sq);
SpectralField bilinear(const SpectralField& u, const SpectralField& v);

/// Restriction to the eigenspace |k|^2 = mu.
SpectralField eigenspace_project(const SpectralField& u, std::int64_t mu);

/// Build the forcing field from an EigenforceSpec; |result| = magnitude.
SpectralField make_eigenforce(const EigenforceSpec& spec);

}  // namespace ghostlab
