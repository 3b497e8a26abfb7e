#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ghostlab/rng.hpp"
#include "ghostlab/spectral.hpp"

namespace ghostlab {

/// Scalar state diagnostics entering every ghost-candidate computation.
/// Conventions: e = |u|^2, E = |A^(1/2)u|^2, P = |Au|^2, G = |g|.
struct GhostDiagnostics {
    double e = 0.0;
    double E = 0.0;
    double P = 0.0;
    double G = 0.0;
    double A32_sq = 0.0;  // |A^(3/2) u|^2
    double udot_sq = 0.0; // |du/dt|^2
    double gu = 0.0;      // (g, u)
    std::int64_t lambda = 0;

    double G_sq() const { return G * G; }

    /// Residuals of the defining ghost relations E = (g,u) and P = lambda E.
    double relation_energy_residual() const { return E - gu; }
    double relation_palinstrophy_residual() const { return P - double(lambda) * E; }
    bool ghost_relations_hold(double rel_tol = 1e-9) const;
};

GhostDiagnostics diagnostics(const SpectralField& u, const SpectralField& udot,
                             const SpectralField& g, std::int64_t lambda);

/// Signs and gaps of the four equivalent strict inequalities
/// P < G^2, E < lambda e, E^2 < e G^2, E^2 < e P,
/// together with the two-sided enstrophy bound E <= lambda e <= lambda E.
struct InequalityReport {
    double gap_palinstrophy = 0.0;  // G^2 - P
    double gap_enstrophy = 0.0;     // lambda e - E
    double gap_schwarz = 0.0;       // e G^2 - E^2
    double gap_mixed = 0.0;         // e P - E^2
    double gap_poincare = 0.0;      // E - e

    bool strict_palinstrophy = false;
    bool strict_enstrophy = false;
    bool strict_schwarz = false;
    bool strict_mixed = false;

    bool all_strict = false;
    bool all_equal = false;
    /// The four inequalities must switch between strict and equality together;
    /// mixed combinations beyond tolerance are flagged here.
    bool consistent = false;
    bool two_sided_bound_holds = false;  // E <= lambda e <= lambda E
};

InequalityReport inequality_report(const GhostDiagnostics& d, double rel_tol = 1e-10);

/// Distances from stationarity implied by the gap values:
/// |A(u - u*)| = sqrt(G^2 - P) and |Au - lambda u| = sqrt(lambda (lambda e - E)).
struct PerturbationBounds {
    double stationary_distance = 0.0;
    double eigenvector_defect = 0.0;
};

PerturbationBounds perturbation_bounds(const GhostDiagnostics& d);

/// Lower bound G^2 / (lambda + c_bg * G * sqrt(ln(e * lambda))) for the
/// enstrophy of a ghost state.  Throws DomainError when e * lambda <= 1.
double enstrophy_lower_bound(double e, double lambda, double G, double c_bg);

enum class FrameKind { old_style, new_style };

/// Orthonormal moving frame attached to a state.
struct Frame {
    std::array<SpectralField, 4> f;
    FrameKind kind = FrameKind::old_style;

    /// max_ij |(f_i, f_j) - delta_ij|
    double max_orthonormality_defect() const;
};

/// Coordinates of x in the frame, ((x,f_0), ..., (x,f_3)).
std::array<double, 4> coordinates(const Frame& fr, const SpectralField& x);

/// Frame (g/G, normalized u - (u,f0) f0, udot/|udot|, Gram-Schmidt of Au).
/// Degenerates when u is parallel to g, udot vanishes, or Au lies in the
/// span of the first two vectors.
Frame old_frame(const SpectralField& u, const SpectralField& udot, const SpectralField& g);

/// Frame built without time derivatives: g/G, orthogonalized u, orthogonalized
/// Au, orthogonalized A^2 u.  Degeneracy of the last vector means A^2 u lies
/// in span{g, u, Au}; in that case the FrameDegenerate error carries the
/// coefficients (gamma, beta, alpha) fitted from the Gram system.
Frame new_frame(const SpectralField& u, const SpectralField& g);

/// Symmetric positive definite representation of the Stokes operator on the
/// old frame, [[lambda,0,0,0],[0,a,0,c],[0,0,1,0],[0,c,0,b]] with b = s c^2/a.
struct StokesMatrix {
    std::array<std::array<double, 4>, 4> m{};
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double s = 0.0;

    std::array<double, 4> apply(const std::array<double, 4>& x) const;
    bool is_spd() const;
};

StokesMatrix stokes_matrix(const GhostDiagnostics& d, double s = 2.0);

/// Frame representation of the advection term: entries B^h_jk with
///   B^0_01 = beta0/(eta0 eta1),  B^1_10 = beta1/(eta0 eta1),
///   B^2_00 = beta2/eta0^2,       B^3_00 = beta3/eta0^2,
///   B^0_20 = B^2_00 = -B^0_02,   B^0_30 = B^3_00 = -B^0_03,
/// free entries zero.  (eta0, eta1) are the first two coordinates of the
/// state, betas the frame coordinates of B(u,u).
struct NonlinearTensor {
    double b[4][4][4] = {};

    std::array<double, 4> apply(const std::array<double, 4>& x,
                                const std::array<double, 4>& y) const;
};

NonlinearTensor nonlinear_tensor(double eta0, double eta1, const std::array<double, 4>& betas);

/// Gram matrix of (g, u, Au) under the ghost relations, with its determinant
/// in closed form (lambda e - E) E (G^2 - P).
struct GramMatrix {
    std::array<std::array<double, 3>, 3> m{};
    double det_closed_form = 0.0;

    double det_direct() const;
};

GramMatrix gram_matrix(const GhostDiagnostics& d);

/// Coefficients of the projection of B(u,u) onto span{g, u, Au}; for ghost
/// diagnostics the solution is (1, 0, -1), i.e. the projection is g - Au.
std::array<double, 3> project_b_onto_h012(const GhostDiagnostics& d);

/// Coefficients of the chained relation A^2 u = gamma g + beta u + alpha Au,
/// obtained from the Gram system with right side (lambda P, P, |A^(3/2)u|^2).
struct ChainedCoefficients {
    double gamma = 0.0;
    double beta = 0.0;
    double alpha = 0.0;
    double discriminant = 0.0;  // alpha^2 + 4 beta
    double mu_plus = 0.0;       // NaN when the discriminant is negative
    double mu_minus = 0.0;
    double eta = 0.0;           // E / G^2

    bool has_real_roots() const;
};

ChainedCoefficients chained_coefficients(const GhostDiagnostics& d);

/// Shell decomposition u = u_plus + u_minus + eta g of a chained candidate,
/// with the measured deviations from the closed-form norm identities
///   |u+|^2 = (lambda-mu-)/(mu+(mu+ - mu-)) E (1 - P/G^2),
///   |u-|^2 = (lambda-mu+)/(mu-(mu- - mu+)) E (1 - P/G^2),
/// and the balance mu+|u+|^2(lambda-mu+) + mu-|u-|^2(lambda-mu-) = 0.
struct ChainedDecomposition {
    SpectralField u_plus;
    SpectralField u_minus;
    double eta = 0.0;
    std::int64_t shell_plus = 0;
    std::int64_t shell_minus = 0;

    double u_plus_sq = 0.0;
    double u_minus_sq = 0.0;
    double u_plus_sq_formula = 0.0;
    double u_minus_sq_formula = 0.0;
    double balance_residual = 0.0;
    double reconstruction_residual = 0.0;

    /// Set when u_plus vanishes while E > 0, in which case the norm identity
    /// can only hold with P = G^2, i.e. for the stationary state.
    bool forces_stationary = false;
};

ChainedDecomposition decompose_chained(const SpectralField& u, const SpectralField& g,
                                       const ChainedCoefficients& cc,
                                       const GhostDiagnostics& d);

/// Point of the chained-candidate parabola
/// (2 - mu_plus) E^2 + (mu_plus - 1) G^2 E - mu_plus G^2 e = 0 (lambda = 2),
/// lower branch, for e in [0, G^2/4].
struct ParabolaPoint {
    double e = 0.0;
    double E = 0.0;
    bool interior = false;  // strictly inside the admissible region
    bool boundary = false;  // endpoint shared with E^2 - G^2 E + e G^2 = 0
};

std::vector<ParabolaPoint> parabola_curve(double mu_plus, double G,
                                          const std::vector<double>& e_grid);

/// Constancy audit of |A^s u| and (A^(2s)u, B(u,u)) along a trajectory
/// (time-independent for chained candidates).
struct PowersConstancyEntry {
    double s = 0.0;
    double norm_initial = 0.0;
    double norm_max_deviation = 0.0;
    double coupling_initial = 0.0;
    double coupling_max_deviation = 0.0;
};

std::vector<PowersConstancyEntry> powers_constancy_check(
    const std::vector<SpectralField>& states, const std::vector<double>& s_values);

/// Coordinate transport between two orthonormal frames,
/// W_ik = (b_i, a_k); orthogonal whenever the frames span the same subspace.
std::array<std::array<double, 4>, 4> frame_transport(const Frame& a, const Frame& b);

/// Deterministic synthetic state satisfying every chained-ghost identity at
/// lambda = 2: support on shells {1, 2, 5} with |u_plus|^2 = w,
/// |u_minus|^2 = 15 w and the shell-2 part eta g.  Requires w <= G^2/160.
struct ChainedState {
    SpectralField u;
    SpectralField g;
    double eta = 0.0;
    double w = 0.0;
};

ChainedState make_chained_state(double G, double w, Rng& rng);

/// Orthogonal projection of x onto the orthogonal complement of the span of
/// the given fields (Gram-Schmidt based, fields need not be orthonormal).
SpectralField orthogonal_complement(const SpectralField& x,
                                    const std::vector<SpectralField>& span);

}  // namespace ghostlab
