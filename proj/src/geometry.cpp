#include "ghostlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ghostlab {

namespace {

constexpr double kDegenerateRel = 1e-10;
constexpr double kScalarGuard = 1e-12;

double sq(double x) { return x * x; }

/// Solve a 3x3 linear system by Gaussian elimination with partial pivoting.
/// Returns false when a pivot falls below `pivot_floor`.
bool solve3(std::array<std::array<double, 3>, 3> m, std::array<double, 3> rhs,
            std::array<double, 3>& out, double pivot_floor) {
    int perm[3] = {0, 1, 2};
    for (int col = 0; col < 3; ++col) {
        int best = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(m[perm[r]][col]) > std::abs(m[perm[best]][col])) best = r;
        std::swap(perm[col], perm[best]);
        double pivot = m[perm[col]][col];
        if (std::abs(pivot) <= pivot_floor) return false;
        for (int r = col + 1; r < 3; ++r) {
            double f = m[perm[r]][col] / pivot;
            for (int c = col; c < 3; ++c) m[perm[r]][c] -= f * m[perm[col]][c];
            rhs[perm[r]] -= f * rhs[perm[col]];
        }
    }
    for (int col = 2; col >= 0; --col) {
        double acc = rhs[perm[col]];
        for (int c = col + 1; c < 3; ++c) acc -= m[perm[col]][c] * out[c];
        out[col] = acc / m[perm[col]][col];
    }
    return true;
}

}  // namespace

bool GhostDiagnostics::ghost_relations_hold(double rel_tol) const {
    double scale = std::max({E, G_sq(), 1e-300});
    return std::abs(relation_energy_residual()) <= rel_tol * scale &&
           std::abs(relation_palinstrophy_residual()) <= rel_tol * double(lambda) * scale;
}

GhostDiagnostics diagnostics(const SpectralField& u, const SpectralField& udot,
                             const SpectralField& g, std::int64_t lambda) {
    if (lambda < 1 || !in_stokes_spectrum(lambda))
        throw NotAnEigenvalue(std::to_string(lambda) + " is not a sum of two squares");
    GhostDiagnostics d;
    d.e = sq(norm_as(u, 0.0));
    d.E = sq(norm_as(u, 0.5));
    d.P = sq(norm_as(u, 1.0));
    d.G = norm_as(g, 0.0);
    d.A32_sq = sq(norm_as(u, 1.5));
    d.udot_sq = sq(norm_as(udot, 0.0));
    d.gu = inner(g, u);
    d.lambda = lambda;
    if (!std::isfinite(d.e) || !std::isfinite(d.P) || !std::isfinite(d.A32_sq))
        throw NonFinite("diagnostics of a non-finite state");
    return d;
}

InequalityReport inequality_report(const GhostDiagnostics& d, double rel_tol) {
    InequalityReport r;
    double lam = double(d.lambda);
    r.gap_palinstrophy = d.G_sq() - d.P;
    r.gap_enstrophy = lam * d.e - d.E;
    r.gap_schwarz = d.e * d.G_sq() - sq(d.E);
    r.gap_mixed = d.e * d.P - sq(d.E);
    r.gap_poincare = d.E - d.e;

    double s1 = rel_tol * std::max(d.G_sq(), d.P);
    double s2 = rel_tol * std::max(lam * d.e, d.E);
    double s3 = rel_tol * std::max(d.e * d.G_sq(), sq(d.E));
    double s4 = rel_tol * std::max(d.e * d.P, sq(d.E));

    r.strict_palinstrophy = r.gap_palinstrophy > s1;
    r.strict_enstrophy = r.gap_enstrophy > s2;
    r.strict_schwarz = r.gap_schwarz > s3;
    r.strict_mixed = r.gap_mixed > s4;

    bool eq1 = std::abs(r.gap_palinstrophy) <= s1;
    bool eq2 = std::abs(r.gap_enstrophy) <= s2;
    bool eq3 = std::abs(r.gap_schwarz) <= s3;
    bool eq4 = std::abs(r.gap_mixed) <= s4;

    r.all_strict = r.strict_palinstrophy && r.strict_enstrophy && r.strict_schwarz && r.strict_mixed;
    r.all_equal = eq1 && eq2 && eq3 && eq4;
    r.consistent = r.all_strict || r.all_equal;
    r.two_sided_bound_holds = r.gap_enstrophy >= -s2 && lam * r.gap_poincare >= -s2;
    return r;
}

PerturbationBounds perturbation_bounds(const GhostDiagnostics& d) {
    double lam = double(d.lambda);
    double gap_p = d.G_sq() - d.P;
    double gap_e = lam * d.e - d.E;
    double tol = 1e-12 * std::max({d.G_sq(), d.P, 1.0});
    if (gap_p < -tol || gap_e < -tol)
        throw DomainError("negative gap; state does not satisfy the ghost bounds");
    PerturbationBounds b;
    b.stationary_distance = std::sqrt(std::max(gap_p, 0.0));
    b.eigenvector_defect = std::sqrt(lam * std::max(gap_e, 0.0));
    return b;
}

double enstrophy_lower_bound(double e, double lambda, double G, double c_bg) {
    if (!(e > 0.0) || !(lambda > 0.0) || !(G > 0.0) || !(c_bg > 0.0))
        throw DomainError("enstrophy bound requires positive e, lambda, G, c_bg");
    if (e * lambda <= 1.0)
        throw DomainError("enstrophy bound undefined: ln(e*lambda) <= 0");
    return G * G / (lambda + c_bg * G * std::sqrt(std::log(e * lambda)));
}

double Frame::max_orthonormality_defect() const {
    double worst = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
            double target = (i == j) ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(inner(f[i], f[j]) - target));
        }
    return worst;
}

std::array<double, 4> coordinates(const Frame& fr, const SpectralField& x) {
    return {inner(x, fr.f[0]), inner(x, fr.f[1]), inner(x, fr.f[2]), inner(x, fr.f[3])};
}

namespace {

/// Subtract from x its projections onto the (orthonormal) fields in `basis`,
/// then normalize.  Returns false when the residual drops below
/// kDegenerateRel relative to |x|.
bool gram_schmidt_step(const SpectralField& x, const std::vector<const SpectralField*>& basis,
                       SpectralField& out, double* residual_norm = nullptr) {
    SpectralField r = x;
    for (const SpectralField* b : basis) r = r - *b * inner(x, *b);
    double n = norm_as(r, 0.0);
    if (residual_norm) *residual_norm = n;
    if (n <= kDegenerateRel * std::max(norm_as(x, 0.0), 1e-300)) return false;
    out = r * (1.0 / n);
    return true;
}

}  // namespace

Frame old_frame(const SpectralField& u, const SpectralField& udot, const SpectralField& g) {
    double G = norm_as(g, 0.0);
    if (G <= 0.0) throw FrameDegenerate("zero force");
    Frame fr;
    fr.kind = FrameKind::old_style;
    fr.f[0] = g * (1.0 / G);
    if (!gram_schmidt_step(u, {&fr.f[0]}, fr.f[1]))
        throw FrameDegenerate("u lies in the span of g");
    double nd = norm_as(udot, 0.0);
    if (nd <= kDegenerateRel * G) throw FrameDegenerate("time derivative vanishes");
    fr.f[2] = udot * (1.0 / nd);
    SpectralField au = apply_stokes_power(u, 1.0);
    if (!gram_schmidt_step(au, {&fr.f[0], &fr.f[1]}, fr.f[3]))
        throw FrameDegenerate("Au lies in the span of g and u");
    return fr;
}

Frame new_frame(const SpectralField& u, const SpectralField& g) {
    double G = norm_as(g, 0.0);
    if (G <= 0.0) throw FrameDegenerate("zero force");
    Frame fr;
    fr.kind = FrameKind::new_style;
    fr.f[0] = g * (1.0 / G);
    if (!gram_schmidt_step(u, {&fr.f[0]}, fr.f[1]))
        throw FrameDegenerate("u lies in the span of g");
    SpectralField au = apply_stokes_power(u, 1.0);
    if (!gram_schmidt_step(au, {&fr.f[0], &fr.f[1]}, fr.f[2]))
        throw FrameDegenerate("Au lies in the span of g and u");
    SpectralField a2u = apply_stokes_power(u, 2.0);
    if (!gram_schmidt_step(a2u, {&fr.f[0], &fr.f[1], &fr.f[2]}, fr.f[3])) {
        // A^2 u sits in span{g, u, Au}: recover the dependence coefficients
        // from the actual Gram system before reporting degeneracy.
        std::array<std::array<double, 3>, 3> m{{{inner(g, g), inner(g, u), inner(g, au)},
                                                {inner(u, g), inner(u, u), inner(u, au)},
                                                {inner(au, g), inner(au, u), inner(au, au)}}};
        std::array<double, 3> rhs{inner(a2u, g), inner(a2u, u), inner(a2u, au)};
        std::array<double, 3> coef{};
        double scale = std::max({std::abs(m[0][0]), std::abs(m[1][1]), std::abs(m[2][2]), 1e-300});
        if (solve3(m, rhs, coef, 1e-14 * scale))
            throw FrameDegenerate("A^2 u lies in the span of g, u, Au", coef[0], coef[1], coef[2]);
        throw FrameDegenerate("A^2 u lies in a degenerate span of g, u, Au");
    }
    return fr;
}

std::array<double, 4> StokesMatrix::apply(const std::array<double, 4>& x) const {
    std::array<double, 4> y{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) y[i] += m[i][j] * x[j];
    return y;
}

bool StokesMatrix::is_spd() const {
    double lam = m[0][0];
    return lam > 0.0 && a > 0.0 && a * b - c * c > 0.0;
}

StokesMatrix stokes_matrix(const GhostDiagnostics& d, double s) {
    if (!(s > 1.0)) throw NotPositiveDefinite("entry scale s must exceed 1");
    double gsq = d.G_sq();
    if (gsq <= 0.0) throw DegenerateDiagnostics("zero force");
    double d1 = d.e - sq(d.E) / gsq;
    if (d1 <= kScalarGuard * std::max(d.e, 1.0))
        throw DegenerateDiagnostics("u parallel to g: e - E^2/G^2 vanishes");

    double num1 = d.E - d.E * d.P / gsq;
    double carg = d.P - sq(d.P) / gsq - sq(num1) / d1;
    if (carg < -1e-10 * std::max(d.P, 1.0))
        throw DomainError("inconsistent diagnostics: negative f3 component of Au");
    carg = std::max(carg, 0.0);
    StokesMatrix sm;
    sm.s = s;
    sm.a = num1 / d1;
    sm.c = std::sqrt(carg) / std::sqrt(d1);
    if (sm.c <= kScalarGuard * std::max(std::sqrt(d.P), 1.0))
        throw DegenerateDiagnostics("Au lies in the span of g and u");
    if (sm.a <= 0.0) throw NotPositiveDefinite("diagonal entry a is not positive");
    sm.b = s * sq(sm.c) / sm.a;

    double lam = double(d.lambda);
    sm.m = {{{lam, 0.0, 0.0, 0.0},
             {0.0, sm.a, 0.0, sm.c},
             {0.0, 0.0, 1.0, 0.0},
             {0.0, sm.c, 0.0, sm.b}}};
    if (!sm.is_spd()) throw NotPositiveDefinite("leading minors are not all positive");
    return sm;
}

std::array<double, 4> NonlinearTensor::apply(const std::array<double, 4>& x,
                                             const std::array<double, 4>& y) const {
    std::array<double, 4> out{};
    for (int h = 0; h < 4; ++h) {
        double acc = 0.0;
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k) acc += b[h][j][k] * x[j] * y[k];
        out[h] = acc;
    }
    return out;
}

NonlinearTensor nonlinear_tensor(double eta0, double eta1, const std::array<double, 4>& betas) {
    double scale = std::hypot(eta0, eta1);
    if (scale <= 0.0 || std::abs(eta0) <= 1e-12 * scale || std::abs(eta1) <= 1e-12 * scale)
        throw DegenerateCoordinates("state coordinates eta0, eta1 must both be nonzero");
    NonlinearTensor t;
    double inv01 = 1.0 / (eta0 * eta1);
    double inv00 = 1.0 / (eta0 * eta0);
    t.b[0][0][1] = betas[0] * inv01;
    t.b[1][1][0] = betas[1] * inv01;
    t.b[2][0][0] = betas[2] * inv00;
    t.b[3][0][0] = betas[3] * inv00;
    t.b[0][2][0] = t.b[2][0][0];
    t.b[0][0][2] = -t.b[2][0][0];
    t.b[0][3][0] = t.b[3][0][0];
    t.b[0][0][3] = -t.b[3][0][0];
    return t;
}

double GramMatrix::det_direct() const {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

GramMatrix gram_matrix(const GhostDiagnostics& d) {
    GramMatrix g;
    g.m = {{{d.G_sq(), d.E, d.P}, {d.E, d.e, d.E}, {d.P, d.E, d.P}}};
    g.det_closed_form = (double(d.lambda) * d.e - d.E) * d.E * (d.G_sq() - d.P);
    return g;
}

std::array<double, 3> project_b_onto_h012(const GhostDiagnostics& d) {
    GramMatrix g = gram_matrix(d);
    std::array<double, 3> out{};
    double scale = std::max({d.G_sq(), d.e, d.P, 1e-300});
    if (!solve3(g.m, {d.G_sq() - d.P, 0.0, 0.0}, out, 1e-13 * scale))
        throw SingularGram("Gram matrix of (g, u, Au) is singular");
    return out;
}

bool ChainedCoefficients::has_real_roots() const { return discriminant > 0.0; }

ChainedCoefficients chained_coefficients(const GhostDiagnostics& d) {
    double gsq = d.G_sq();
    double lam = double(d.lambda);
    double den_g = gsq - d.P;
    double den_b = lam * d.e - d.E;
    double guard = kScalarGuard * std::max(gsq, 1.0);
    if (std::abs(den_g) <= guard)
        throw DegenerateDiagnostics("G^2 - P vanishes");
    if (std::abs(den_b) <= guard)
        throw DegenerateDiagnostics("lambda e - E vanishes");
    if (std::abs(d.E) <= guard)
        throw DegenerateDiagnostics("enstrophy vanishes");

    double rho = lam * d.P - d.A32_sq;
    ChainedCoefficients cc;
    cc.gamma = rho / den_g;
    cc.beta = rho / den_b;
    cc.alpha = d.P / d.E - cc.gamma - (d.e / d.E) * cc.beta;
    cc.discriminant = sq(cc.alpha) + 4.0 * cc.beta;
    cc.eta = d.E / gsq;
    if (cc.discriminant > 0.0) {
        double p = std::sqrt(cc.discriminant);
        cc.mu_plus = 0.5 * (cc.alpha + p);
        cc.mu_minus = 0.5 * (cc.alpha - p);
    } else {
        cc.mu_plus = std::numeric_limits<double>::quiet_NaN();
        cc.mu_minus = std::numeric_limits<double>::quiet_NaN();
    }

    // For exact ghost-relation inputs the signs are pinned: rho < 0,
    // gamma < 0, beta < 0, alpha > lambda, and the discriminant is positive.
    if (d.lambda == 2 && d.ghost_relations_hold(1e-12)) {
        if (!(rho < 0.0) || !(cc.gamma < 0.0) || !(cc.beta < 0.0) || !(cc.alpha > lam) ||
            !(cc.discriminant > 0.0))
            throw DomainError("chained coefficient sign pattern violated on ghost input");
        if (std::abs(cc.mu_plus - lam) <= 1e-9 * lam || std::abs(cc.mu_minus - lam) <= 1e-9 * lam)
            throw DomainError("forced shell collides with the root shells");
    }
    return cc;
}

ChainedDecomposition decompose_chained(const SpectralField& u, const SpectralField& g,
                                       const ChainedCoefficients& cc,
                                       const GhostDiagnostics& d) {
    if (!cc.has_real_roots())
        throw DecompositionResidual("no real root pair for the chained relation");
    double mp = std::round(cc.mu_plus);
    double mm = std::round(cc.mu_minus);
    double root_tol = 1e-6 * std::max(1.0, std::abs(cc.mu_plus));
    if (std::abs(mp - cc.mu_plus) > root_tol || std::abs(mm - cc.mu_minus) > root_tol ||
        mp < 1.0 || mm < 1.0)
        throw DecompositionResidual("chained roots are not lattice shells");

    ChainedDecomposition out;
    out.shell_plus = std::int64_t(mp);
    out.shell_minus = std::int64_t(mm);
    if (!in_stokes_spectrum(out.shell_plus) || !in_stokes_spectrum(out.shell_minus))
        throw DecompositionResidual("chained roots are not Stokes eigenvalues");
    out.eta = cc.eta;
    out.u_plus = eigenspace_project(u, out.shell_plus);
    out.u_minus = eigenspace_project(u, out.shell_minus);

    SpectralField recon = out.u_plus + out.u_minus + g * out.eta;
    out.reconstruction_residual = norm_as(u - recon, 0.0);
    double unorm = norm_as(u, 0.0);
    if (out.reconstruction_residual > 1e-10 * std::max(unorm, 1e-300))
        throw DecompositionResidual("state is not a sum of the two root shells and the force shell");

    double lam = double(d.lambda);
    double mu_p = cc.mu_plus;
    double mu_m = cc.mu_minus;
    out.u_plus_sq = sq(norm_as(out.u_plus, 0.0));
    out.u_minus_sq = sq(norm_as(out.u_minus, 0.0));
    double shared = d.E * (1.0 - d.P / d.G_sq());
    out.u_plus_sq_formula = (lam - mu_m) / (mu_p * (mu_p - mu_m)) * shared;
    out.u_minus_sq_formula = (lam - mu_p) / (mu_m * (mu_m - mu_p)) * shared;
    out.balance_residual = mu_p * out.u_plus_sq * (lam - mu_p) + mu_m * out.u_minus_sq * (lam - mu_m);

    out.forces_stationary = out.u_plus_sq <= 1e-12 * std::max(d.e, 1e-300) &&
                            d.E > 1e-12 && out.u_plus_sq_formula > 1e-10 * d.E;
    return out;
}

std::vector<ParabolaPoint> parabola_curve(double mu_plus, double G,
                                          const std::vector<double>& e_grid) {
    if (!(mu_plus > 2.0)) throw DomainError("the chained parabola requires mu_plus > 2");
    if (!(G > 0.0)) throw DomainError("force magnitude must be positive");
    double gsq = G * G;
    double slack = 1e-12 * gsq;

    std::vector<ParabolaPoint> out;
    out.reserve(e_grid.size());
    for (double e : e_grid) {
        if (e < -slack || e > 0.25 * gsq + slack)
            throw NoAdmissibleBranch("e outside [0, G^2/4]");
        double ec = std::clamp(e, 0.0, 0.25 * gsq);
        // (2 - mu) E^2 + (mu - 1) G^2 E - mu G^2 e = 0; lower root of the
        // equivalent (mu - 2) E^2 - (mu - 1) G^2 E + mu G^2 e = 0.
        double a = mu_plus - 2.0;
        double b = -(mu_plus - 1.0) * gsq;
        double c = mu_plus * gsq * ec;
        double disc = b * b - 4.0 * a * c;
        // disc >= G^4 on the admissible range.
        double E = (-b - std::sqrt(disc)) / (2.0 * a);

        ParabolaPoint p;
        p.e = ec;
        p.E = E;
        double boundary_gap = E * E - gsq * E + ec * gsq;
        bool inside_boundary = boundary_gap < -slack;
        bool below_attractor = E * E < ec * gsq + slack && E < G * std::sqrt(std::max(ec, 0.0)) + slack;
        p.interior = ec > slack && ec < 0.25 * gsq - slack && inside_boundary && below_attractor;
        p.boundary = std::abs(boundary_gap) <= 1e-9 * std::max(gsq * gsq, 1.0) &&
                     (ec <= slack || ec >= 0.25 * gsq - slack);
        out.push_back(p);
    }
    return out;
}

std::vector<PowersConstancyEntry> powers_constancy_check(
    const std::vector<SpectralField>& states, const std::vector<double>& s_values) {
    if (states.empty()) throw DomainError("no states to audit");
    std::vector<PowersConstancyEntry> out;
    out.reserve(s_values.size());
    for (double s : s_values) {
        PowersConstancyEntry entry;
        entry.s = s;
        for (std::size_t i = 0; i < states.size(); ++i) {
            const SpectralField& u = states[i];
            double n = norm_as(u, s);
            SpectralField b = bilinear(u, u, u.radius_sq());
            double coupling = inner(apply_stokes_power(u, 2.0 * s), b);
            if (i == 0) {
                entry.norm_initial = n;
                entry.coupling_initial = coupling;
            } else {
                entry.norm_max_deviation =
                    std::max(entry.norm_max_deviation, std::abs(n - entry.norm_initial));
                entry.coupling_max_deviation = std::max(entry.coupling_max_deviation,
                                                        std::abs(coupling - entry.coupling_initial));
            }
        }
        out.push_back(entry);
    }
    return out;
}

std::array<std::array<double, 4>, 4> frame_transport(const Frame& a, const Frame& b) {
    std::array<std::array<double, 4>, 4> w{};
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) w[i][k] = inner(b.f[i], a.f[k]);
    return w;
}

namespace {

/// Random reality-respecting scalar amplitudes on the listed half-shell,
/// rescaled to the requested squared norm.
ScalarAmplitudeField random_shell_pattern(const std::vector<WaveVector>& half_modes,
                                          double norm_sq_target, Rng& rng) {
    std::vector<std::pair<WaveVector, Complex>> amps;
    double acc = 0.0;
    for (WaveVector k : half_modes) {
        double mag = 0.25 + 0.75 * rng.next_unit();
        double phase = 6.283185307179586476925286766559 * rng.next_unit();
        Complex a = mag * Complex{std::cos(phase), std::sin(phase)};
        amps.emplace_back(k, a);
        acc += 2.0 * std::norm(a);
    }
    double scale = std::sqrt(norm_sq_target / acc);
    for (auto& [k, a] : amps) a *= scale;
    return ScalarAmplitudeField::make(amps);
}

}  // namespace

ChainedState make_chained_state(double G, double w, Rng& rng) {
    if (!(G > 0.0)) throw DomainError("force magnitude must be positive");
    double gsq = G * G;
    if (!(w > 0.0) || w > gsq / 160.0)
        throw DomainError("shell weight w must lie in (0, G^2/160]");

    ChainedState st;
    st.w = w;
    st.eta = 0.25 * (1.0 - std::sqrt(1.0 - 160.0 * w / gsq));
    st.g = make_eigenforce({.lambda = 2, .pattern = {}, .magnitude = G});

    ScalarAmplitudeField minus = random_shell_pattern({{1, 0}, {0, 1}}, 15.0 * w, rng);
    ScalarAmplitudeField plus = random_shell_pattern({{1, 2}, {2, 1}, {2, -1}, {1, -2}}, w, rng);

    st.u = SpectralField::from_scalar(minus, 5) + st.g * st.eta + SpectralField::from_scalar(plus, 5);
    return st;
}

SpectralField orthogonal_complement(const SpectralField& x,
                                    const std::vector<SpectralField>& span) {
    std::vector<SpectralField> basis;
    for (const SpectralField& v : span) {
        SpectralField r = v;
        for (const SpectralField& b : basis) r = r - b * inner(r, b);
        double n = norm_as(r, 0.0);
        if (n > 1e-13 * std::max(norm_as(v, 0.0), 1e-300)) basis.push_back(r * (1.0 / n));
    }
    SpectralField out = x;
    for (const SpectralField& b : basis) out = out - b * inner(out, b);
    return out;
}

}  // namespace ghostlab
