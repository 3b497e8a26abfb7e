#pragma once

#include <cstdint>
#include <vector>

#include "ghostlab/geometry.hpp"
#include "ghostlab/spectral.hpp"

namespace ghostlab {

/// Eigenspace-compressed Galerkin system: modes restricted to a finite union
/// of Stokes shells, with the forcing an eigenforce on shell lambda.
struct GalerkinSpec {
    std::vector<std::int64_t> mode_shells;  // sorted, distinct
    SpectralField force;
    std::int64_t lambda = 0;

    /// Validates that every shell carries lattice vectors, lambda is one of
    /// the shells, and the force is supported exactly on shell lambda.
    static GalerkinSpec make(std::vector<std::int64_t> shells, SpectralField force,
                             std::int64_t lambda);

    bool contains_shell(std::int64_t mu) const;
    std::int64_t max_shell() const { return mode_shells.back(); }
};

/// Right-hand-side selector: the compressed system projects the advection
/// term onto the active shells, the ball system truncates it to |k|^2 <= R.
struct SystemSpec {
    enum class Kind { compressed, ball };

    Kind kind = Kind::compressed;
    GalerkinSpec galerkin;       // force/lambda live here for both kinds
    std::int64_t radius_sq = 0;  // kind == ball only

    static SystemSpec compressed(GalerkinSpec spec);
    static SystemSpec ball(std::int64_t radius_sq, SpectralField force, std::int64_t lambda);

    const SpectralField& force() const { return galerkin.force; }
    std::int64_t lambda() const { return galerkin.lambda; }
};

/// g - Au - B(u,u), with the advection term truncated to u's ball.
SpectralField rhs_full(const SpectralField& u, const SpectralField& g);

/// g - Au - (projection onto spec.mode_shells of B(u,u)).  Throws
/// SupportViolation when u carries modes outside the shells.
SpectralField rhs_compressed(const SpectralField& u, const GalerkinSpec& spec);

/// Dispatch on spec.kind.
SpectralField rhs(const SpectralField& u, const SystemSpec& spec);

/// One step of the exponential 4th-order integrator (exact on the Stokes
/// term, explicit on forcing + advection).
SpectralField step_etdrk4(const SpectralField& u, const SystemSpec& spec, double dt);

struct Trajectory {
    std::vector<double> times;
    std::vector<SpectralField> states;
    std::vector<SpectralField> derivatives;  // rhs evaluated at each sample

    std::size_t size() const { return times.size(); }
};

/// Integrates from u0 for n = round(T/dt) steps, sampling every
/// `sample_every` steps plus the final state.  Throws NonFinite when a
/// coefficient leaves the floating range or |u| exceeds 10^3 |g|
/// (discretization blow-up guard).
Trajectory integrate(const SpectralField& u0, const SystemSpec& spec, double T, double dt,
                     int sample_every);

enum class GhostVerdict { candidate_chained_ghost, not_ghost, converged_to_steady_state };

const char* ghost_verdict_name(GhostVerdict v);

struct GhostCheckSample {
    double t = 0.0;
    double eta = 0.0;            // ||u||^2 / G^2
    double eta_prime = 0.0;      // numerical d eta / dt
    double chained_residual = 0.0;  // |A^2 u - gamma g - beta u - alpha Au|
    double set_condition = 0.0;  // (lambda e - E) (E / e)
    double udot_norm = 0.0;
    bool chained_evaluated = false;
};

struct GhostCheckReport {
    std::vector<GhostCheckSample> samples;
    double eta_derivative_max = 0.0;
    double chained_residual_max = 0.0;
    double udot_final = 0.0;
    GhostVerdict verdict = GhostVerdict::not_ghost;
};

/// Computational ghost audit: integrate the compressed system from the
/// shell-projection of u0, then test the sampled trajectory for constancy of
/// eta = ||u||^2/G^2 and smallness of the chained-relation residual.
/// A trajectory whose final |du/dt| falls below eps_eta is classified as
/// converged to the steady state.
GhostCheckReport ghost_check(const SpectralField& u0, const GalerkinSpec& spec, double T,
                             double dt, int sample_every, double eps_eta, double eps_chained);

/// Evaluation half of ghost_check, usable on manufactured trajectories.
GhostCheckReport ghost_check_evaluate(const Trajectory& traj, const SpectralField& g,
                                      std::int64_t lambda, double eps_eta, double eps_chained);

struct BalanceResidual {
    double t = 0.0;
    double energy = 0.0;     // (1/2) d|u|^2/dt + ||u||^2 - (g,u)
    double enstrophy = 0.0;  // (1/2) d||u||^2/dt + |Au|^2 - lambda (g,u)
};

/// Residuals of the energy and enstrophy balances along a sampled
/// trajectory, time derivatives by second-order differences.
std::vector<BalanceResidual> balance_residuals(const Trajectory& traj, const SpectralField& g,
                                               std::int64_t lambda);

/// Pointwise residuals of the structural identities satisfied by states with
/// constant energy and enstrophy.  The advection term is recovered from the
/// balance b = g - Au - udot, so the residuals probe the identities rather
/// than the convolution.
struct StructureResiduals {
    double orth_force = 0.0;       // (udot, g)
    double orth_stokes = 0.0;      // (udot, Au)
    double orth_state = 0.0;       // (udot, u)
    double norm_balance = 0.0;     // |b|^2 + |Au|^2 - |udot|^2 - |g|^2
    double transfer_direct = 0.0;  // (b, g) - (|b|^2 - |udot|^2)
    double transfer_gap = 0.0;     // (b, g) - (G^2 - P)
    double shift_minus = 0.0;      // |b - g/2|^2 - |udot - g/2|^2
    double shift_plus = 0.0;       // |b - g/2|^2 - |udot + g/2|^2
    double coupling = 0.0;         // (b, udot) + |udot|^2

    double max_abs() const;
};

StructureResiduals structure_residuals(const SpectralField& u, const SpectralField& udot,
                                       const SpectralField& g, std::int64_t lambda);

/// Audit of the extension direction: a compressed trajectory whose advection
/// term never leaks outside the active shells must have constant |u| and
/// ||u||.
struct ExtensionCheck {
    double leak_max = 0.0;  // max_t |(1 - projection) B(u,u)|
    double e_drift = 0.0;
    double E_drift = 0.0;
    bool hypothesis_holds = false;
    bool extension_holds = false;
};

ExtensionCheck extension_property_check(const Trajectory& traj, const GalerkinSpec& spec,
                                        double tol_leak, double tol_drift);

}  // namespace ghostlab
