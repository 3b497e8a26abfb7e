#include "ghostlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace ghostlab {

namespace {

constexpr double kRealityTol = 1e-12;
constexpr double kDivergenceTol = 1e-12;

bool finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

}  // namespace

const char* errc_name(errc c) {
    switch (c) {
        case errc::invalid_argument: return "InvalidArgument";
        case errc::reality_violation: return "RealityViolation";
        case errc::divergence_violation: return "DivergenceViolation";
        case errc::truncation_violation: return "TruncationViolation";
        case errc::not_an_eigenvalue: return "NotAnEigenvalue";
        case errc::shell_violation: return "ShellViolation";
        case errc::support_violation: return "SupportViolation";
        case errc::nonfinite: return "NonFinite";
        case errc::degenerate_diagnostics: return "DegenerateDiagnostics";
        case errc::frame_degenerate: return "FrameDegenerate";
        case errc::not_positive_definite: return "NotPositiveDefinite";
        case errc::degenerate_coordinates: return "DegenerateCoordinates";
        case errc::singular_gram: return "SingularGram";
        case errc::decomposition_residual: return "DecompositionResidual";
        case errc::domain_error: return "DomainError";
        case errc::no_admissible_branch: return "NoAdmissibleBranch";
        case errc::generation_mismatch: return "GenerationMismatch";
        case errc::propagation_stall: return "PropagationStall";
        case errc::config_error: return "ConfigError";
        case errc::io_error: return "IoError";
    }
    return "UnknownError";
}

ScalarAmplitudeField ScalarAmplitudeField::make(
    const std::vector<std::pair<WaveVector, Complex>>& amplitudes) {
    ScalarAmplitudeField f;
    for (const auto& [k, a] : amplitudes) {
        if (k.is_zero()) throw SupportViolation("scalar amplitude at k = 0");
        if (!finite(a)) throw NonFinite("scalar amplitude at " + k.str());
        auto [it, fresh] = f.amps_.emplace(k, a);
        if (!fresh && std::abs(it->second - a) > kRealityTol * std::abs(a))
            throw RealityViolation("conflicting duplicate amplitude at " + k.str());
    }
    for (const auto& [k, a] : f.amps_) {
        auto it = f.amps_.find(-k);
        if (it == f.amps_.end()) continue;
        if (std::abs(it->second - std::conj(a)) > kRealityTol * std::max(std::abs(a), 1e-300))
            throw RealityViolation("alpha(-k) != conj(alpha(k)) at " + k.str());
    }
    // Fill in missing conjugate partners.
    std::vector<std::pair<WaveVector, Complex>> fill;
    for (const auto& [k, a] : f.amps_)
        if (!f.amps_.count(-k)) fill.emplace_back(-k, std::conj(a));
    for (auto& [k, a] : fill) f.amps_.emplace(k, a);
    return f;
}

Complex ScalarAmplitudeField::amplitude(WaveVector k) const {
    auto it = amps_.find(k);
    return it == amps_.end() ? Complex{0.0, 0.0} : it->second;
}

SpectralField SpectralField::zero(std::int64_t radius_sq) {
    if (radius_sq < 1) throw TruncationViolation("truncation radius must allow |k|^2 >= 1");
    SpectralField f;
    f.radius_sq_ = radius_sq;
    return f;
}

SpectralField SpectralField::make(const std::vector<std::pair<WaveVector, ModeCoeff>>& entries,
                                  std::int64_t radius_sq) {
    SpectralField f = zero(radius_sq);
    for (const auto& [k, c] : entries) {
        if (k.is_zero()) throw SupportViolation("coefficient at k = 0");
        if (k.norm_sq() > radius_sq)
            throw TruncationViolation("mode " + k.str() + " outside radius_sq = " +
                                      std::to_string(radius_sq));
        if (!finite(c.x) || !finite(c.y)) throw NonFinite("coefficient at " + k.str());
        double mag = std::sqrt(c.norm_sq());
        if (std::abs(c.dot_wave(k)) > kDivergenceTol * std::max(mag, 1e-300))
            throw DivergenceViolation("k . u_hat(k) != 0 at " + k.str());
        f.coeffs_[k] = c;
    }
    for (const auto& [k, c] : f.coeffs_) {
        auto it = f.coeffs_.find(-k);
        if (it == f.coeffs_.end()) continue;
        ModeCoeff d = it->second - c.conj();
        double mag = std::sqrt(c.norm_sq());
        if (std::sqrt(d.norm_sq()) > kRealityTol * std::max(mag, 1e-300))
            throw RealityViolation("u_hat(-k) != conj(u_hat(k)) at " + k.str());
    }
    std::vector<std::pair<WaveVector, ModeCoeff>> fill;
    for (const auto& [k, c] : f.coeffs_)
        if (!f.coeffs_.count(-k)) fill.emplace_back(-k, c.conj());
    for (auto& [k, c] : fill) f.coeffs_.emplace(k, c);
    return f;
}

SpectralField SpectralField::from_scalar(const ScalarAmplitudeField& a, std::int64_t radius_sq) {
    SpectralField f = zero(radius_sq);
    for (const auto& [k, alpha] : a.amps_) {
        if (k.norm_sq() > radius_sq)
            throw TruncationViolation("mode " + k.str() + " outside radius_sq = " +
                                      std::to_string(radius_sq));
        double inv_norm = 1.0 / std::sqrt(double(k.norm_sq()));
        Complex c = Complex{0.0, 1.0} * alpha * inv_norm;
        f.coeffs_[k] = ModeCoeff{c * double(k.perp().k1), c * double(k.perp().k2)};
    }
    return f;
}

ScalarAmplitudeField SpectralField::to_scalar() const {
    ScalarAmplitudeField a;
    for (const auto& [k, c] : coeffs_) {
        double inv_norm = 1.0 / std::sqrt(double(k.norm_sq()));
        a.amps_[k] = Complex{0.0, -1.0} * c.dot_wave(k.perp()) * inv_norm;
    }
    return a;
}

ModeCoeff SpectralField::coeff(WaveVector k) const {
    auto it = coeffs_.find(k);
    return it == coeffs_.end() ? ModeCoeff{} : it->second;
}

bool SpectralField::all_finite() const {
    for (const auto& [k, c] : coeffs_)
        if (!finite(c.x) || !finite(c.y)) return false;
    return true;
}

SpectralField SpectralField::operator+(const SpectralField& o) const {
    SpectralField r = zero(std::max(radius_sq_, o.radius_sq_));
    r.coeffs_ = coeffs_;
    for (const auto& [k, c] : o.coeffs_) {
        auto [it, fresh] = r.coeffs_.emplace(k, c);
        if (!fresh) it->second = it->second + c;
    }
    return r;
}

SpectralField SpectralField::operator-(const SpectralField& o) const {
    return *this + o * -1.0;
}

SpectralField SpectralField::operator*(double c) const {
    SpectralField r = *this;
    for (auto& [k, v] : r.coeffs_) v = v * c;
    return r;
}

std::vector<WaveVector> shell_vectors(std::int64_t mu) {
    std::vector<WaveVector> out;
    if (mu < 1) return out;
    int bound = int(std::sqrt(double(mu))) + 1;
    for (int a = -bound; a <= bound; ++a)
        for (int b = -bound; b <= bound; ++b)
            if (std::int64_t(a) * a + std::int64_t(b) * b == mu) out.push_back({a, b});
    std::sort(out.begin(), out.end());
    return out;
}

bool in_stokes_spectrum(std::int64_t mu) { return !shell_vectors(mu).empty(); }

SpectralField apply_stokes_power(const SpectralField& u, double s) {
    SpectralField r = u;
    for (auto& [k, c] : r.coeffs_) c = c * std::pow(double(k.norm_sq()), s);
    return r;
}

double inner(const SpectralField& u, const SpectralField& v) {
    const auto& a = u.modes();
    const auto& b = v.modes();
    double acc = 0.0;
    if (a.size() <= b.size()) {
        for (const auto& [k, c] : a) {
            auto it = b.find(k);
            if (it == b.end()) continue;
            acc += c.x.real() * it->second.x.real() + c.x.imag() * it->second.x.imag() +
                   c.y.real() * it->second.y.real() + c.y.imag() * it->second.y.imag();
        }
    } else {
        return inner(v, u);
    }
    return acc;
}

double norm_as(const SpectralField& u, double s) {
    double acc = 0.0;
    for (const auto& [k, c] : u.modes()) acc += std::pow(double(k.norm_sq()), 2.0 * s) * c.norm_sq();
    return std::sqrt(acc);
}

namespace {

/// Dense accumulation buffer over the square [-half, half]^2 of mode indices.
class ConvolutionGrid {
public:
    explicit ConvolutionGrid(int half) : half_(half), side_(2 * half + 1), data_(side_ * side_) {}

    ModeCoeff& at(WaveVector k) { return data_[(k.k1 + half_) * side_ + (k.k2 + half_)]; }
    int half() const { return half_; }

private:
    int half_;
    int side_;
    std::vector<ModeCoeff> data_;
};

}  // namespace

SpectralField bilinear(const SpectralField& u, const SpectralField& v, std::int64_t out_radius_sq) {
    int half_u = int(std::sqrt(double(u.radius_sq())));
    int half_v = int(std::sqrt(double(v.radius_sq())));
    ConvolutionGrid grid(half_u + half_v);

    const Complex i_unit{0.0, 1.0};
    for (const auto& [j, vj] : v.modes()) {
        for (const auto& [m, um] : u.modes()) {
            WaveVector k = m + j;
            if (k.is_zero()) continue;
            Complex advect = i_unit * um.dot_wave(j);
            // Leray projection of v_hat(j) along k.
            Complex vk_over_ksq = vj.dot_wave(k) / double(k.norm_sq());
            ModeCoeff term{advect * (vj.x - vk_over_ksq * double(k.k1)),
                           advect * (vj.y - vk_over_ksq * double(k.k2))};
            ModeCoeff& slot = grid.at(k);
            slot = slot + term;
        }
    }

    SpectralField out = SpectralField::zero(std::max<std::int64_t>(out_radius_sq, 1));
    int half = grid.half();
    for (int a = -half; a <= half; ++a) {
        for (int b = -half; b <= half; ++b) {
            WaveVector k{a, b};
            if (k.is_zero() || k.norm_sq() > out_radius_sq) continue;
            ModeCoeff c = grid.at(k);
            if (c.x == Complex{} && c.y == Complex{}) continue;
            out.insert_unchecked(k, c);
        }
    }
    return out;
}

SpectralField bilinear(const SpectralField& u, const SpectralField& v) {
    int half_u = int(std::sqrt(double(u.radius_sq())));
    int half_v = int(std::sqrt(double(v.radius_sq())));
    std::int64_t full = std::int64_t(half_u + half_v) * (half_u + half_v) * 2;
    return bilinear(u, v, full);
}

SpectralField eigenspace_project(const SpectralField& u, std::int64_t mu) {
    SpectralField r = SpectralField::zero(u.radius_sq());
    for (const auto& [k, c] : u.modes())
        if (k.norm_sq() == mu) r.insert_unchecked(k, c);
    return r;
}

SpectralField make_eigenforce(const EigenforceSpec& spec) {
    if (spec.lambda < 1 || !in_stokes_spectrum(spec.lambda))
        throw NotAnEigenvalue(std::to_string(spec.lambda) + " is not a sum of two squares");
    if (!(spec.magnitude > 0.0) || !std::isfinite(spec.magnitude))
        throw DomainError("eigenforce magnitude must be positive");

    std::vector<std::pair<WaveVector, Complex>> amps;
    if (spec.pattern.empty()) {
        for (WaveVector k : shell_vectors(spec.lambda)) amps.emplace_back(k, Complex{1.0, 0.0});
    } else {
        for (const auto& [k, a] : spec.pattern) {
            if (k.norm_sq() != spec.lambda)
                throw ShellViolation("pattern mode " + k.str() + " not on shell " +
                                     std::to_string(spec.lambda));
            amps.emplace_back(k, a);
        }
    }
    SpectralField g = SpectralField::from_scalar(ScalarAmplitudeField::make(amps), spec.lambda);
    double norm = norm_as(g, 0.0);
    if (norm <= 0.0) throw DomainError("eigenforce pattern has zero norm");
    return g * (spec.magnitude / norm);
}

}  // namespace ghostlab
