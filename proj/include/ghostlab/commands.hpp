#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ghostlab/constraints.hpp"
#include "ghostlab/dynamics.hpp"
#include "ghostlab/io.hpp"

namespace ghostlab {

/// Exit code plus the one-line summary the CLI prints.
struct CommandResult {
    int exit_code = 0;
    std::string message;
};

/// Replacement advection operator, for mutation tests of the identity suite.
using BilinearFn = std::function<SpectralField(const SpectralField&, const SpectralField&)>;

/// Random divergence-free field on 0 < |k|^2 <= radius_sq with amplitude
/// decay 1/|k|^2, rescaled to |result| = norm.
SpectralField random_field(Rng& rng, std::int64_t radius_sq, double norm = 1.0);

/// Force and system assembled from a config (shared by simulate/ghost-check).
SystemSpec system_from_config(const RunConfig& cfg);

/// Initial state: the inline amplitudes when given, otherwise the stationary
/// state g/lambda plus a seeded perturbation of every active mode with
/// per-mode scale u0_scale / |k|^2.
SpectralField initial_state(const RunConfig& cfg, const SystemSpec& spec, std::uint64_t seed);

/// One entry of the identity-suite report.
struct IdentityResult {
    std::string name;
    double max_residual = 0.0;
    double tolerance = 0.0;
    int samples = 0;
    bool pass = false;
};

/// Randomized verification suite: the four advection-term identities and the
/// single-shell annihilation on random truncated fields, then the structural
/// residuals, frame coordinates, Stokes-matrix reproduction, and the
/// frame-tensor constraint families on synthetic chained states.
std::vector<IdentityResult> run_identity_suite(int samples, std::uint64_t seed,
                                               const BilinearFn& bilinear_override = {});

CommandResult cmd_simulate(const RunConfig& cfg, const std::string& out_dir, std::uint64_t seed);
CommandResult cmd_ghost_check(const RunConfig& cfg, const std::string& out_dir,
                              std::uint64_t seed, int jobs);
CommandResult cmd_curves(const RunConfig& cfg, const std::string& out_dir);
CommandResult cmd_verify_nonexistence(const std::string& out_dir,
                                      const std::vector<BilinearConstraint>* reference_override =
                                          nullptr);
CommandResult cmd_identities(const RunConfig& cfg, const std::string& out_dir, std::uint64_t seed,
                             const BilinearFn& bilinear_override = {});

/// Exit-code contract: 2 config, 3 numeric failure, 4 verification failure.
int exit_code_for(const Error& err);

}  // namespace ghostlab
