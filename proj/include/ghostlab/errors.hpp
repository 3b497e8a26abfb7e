#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace ghostlab {

/// Error categories surfaced through both the C++ and the C interfaces.
enum class errc {
    invalid_argument = 1,
    reality_violation,
    divergence_violation,
    truncation_violation,
    not_an_eigenvalue,
    shell_violation,
    support_violation,
    nonfinite,
    degenerate_diagnostics,
    frame_degenerate,
    not_positive_definite,
    degenerate_coordinates,
    singular_gram,
    decomposition_residual,
    domain_error,
    no_admissible_branch,
    generation_mismatch,
    propagation_stall,
    config_error,
    io_error,
};

const char* errc_name(errc c);

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const { return code_; }

private:
    errc code_;
};

struct RealityViolation : Error {
    explicit RealityViolation(const std::string& w) : Error(errc::reality_violation, w) {}
};
struct DivergenceViolation : Error {
    explicit DivergenceViolation(const std::string& w) : Error(errc::divergence_violation, w) {}
};
struct TruncationViolation : Error {
    explicit TruncationViolation(const std::string& w) : Error(errc::truncation_violation, w) {}
};
struct NotAnEigenvalue : Error {
    explicit NotAnEigenvalue(const std::string& w) : Error(errc::not_an_eigenvalue, w) {}
};
struct ShellViolation : Error {
    explicit ShellViolation(const std::string& w) : Error(errc::shell_violation, w) {}
};
struct SupportViolation : Error {
    explicit SupportViolation(const std::string& w) : Error(errc::support_violation, w) {}
};
struct NonFinite : Error {
    explicit NonFinite(const std::string& w) : Error(errc::nonfinite, w) {}
};
struct DegenerateDiagnostics : Error {
    explicit DegenerateDiagnostics(const std::string& w) : Error(errc::degenerate_diagnostics, w) {}
};

/// Raised when a frame vector cannot be normalized.  When the failure comes
/// from the fourth new-frame vector the fitted dependence coefficients
/// (gamma, beta, alpha) of A^2 u on (g, u, Au) are attached.
struct FrameDegenerate : Error {
    explicit FrameDegenerate(const std::string& w) : Error(errc::frame_degenerate, w) {}
    FrameDegenerate(const std::string& w, double gamma, double beta, double alpha)
        : Error(errc::frame_degenerate, w), fitted_gamma(gamma), fitted_beta(beta), fitted_alpha(alpha) {}

    std::optional<double> fitted_gamma, fitted_beta, fitted_alpha;
};

struct NotPositiveDefinite : Error {
    explicit NotPositiveDefinite(const std::string& w) : Error(errc::not_positive_definite, w) {}
};
struct DegenerateCoordinates : Error {
    explicit DegenerateCoordinates(const std::string& w) : Error(errc::degenerate_coordinates, w) {}
};
struct SingularGram : Error {
    explicit SingularGram(const std::string& w) : Error(errc::singular_gram, w) {}
};
struct DecompositionResidual : Error {
    explicit DecompositionResidual(const std::string& w) : Error(errc::decomposition_residual, w) {}
};
struct DomainError : Error {
    explicit DomainError(const std::string& w) : Error(errc::domain_error, w) {}
};
struct NoAdmissibleBranch : Error {
    explicit NoAdmissibleBranch(const std::string& w) : Error(errc::no_admissible_branch, w) {}
};
struct GenerationMismatch : Error {
    explicit GenerationMismatch(const std::string& w) : Error(errc::generation_mismatch, w) {}
};
struct PropagationStall : Error {
    explicit PropagationStall(const std::string& w) : Error(errc::propagation_stall, w) {}
};
struct ConfigError : Error {
    explicit ConfigError(const std::string& w) : Error(errc::config_error, w) {}
};
struct IoError : Error {
    explicit IoError(const std::string& w) : Error(errc::io_error, w) {}
};

}  // namespace ghostlab
