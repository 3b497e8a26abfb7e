#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "ghostlab/spectral.hpp"

namespace ghostlab {

/// The active lattice sets at lambda = 2: |k|^2 = 1, 2, 5.
struct ActiveSets {
    std::vector<WaveVector> s1;
    std::vector<WaveVector> s2;
    std::vector<WaveVector> s3;

    std::vector<WaveVector> all() const;
};

ActiveSets build_active_sets();

/// The 16 active modes in canonical order (by |k|^2, then k1, then k2).
const std::vector<WaveVector>& active_modes();

/// Position of k in the canonical order; throws SupportViolation otherwise.
int mode_position(WaveVector k);

/// One product term of a wavevector constraint; (a, b) stored in canonical
/// order and coefficients over the integers (common irrational prefactors
/// are stripped).
struct ConstraintTerm {
    std::int64_t coef = 0;
    WaveVector a, b;
};

/// Vanishing requirement sum_i coef_i alpha(a_i) alpha(b_i) = 0 obtained by
/// projecting the advection term of a shells-{1,2,5} state onto a mode
/// outside the active shells.
struct BilinearConstraint {
    int id = 0;  // 1-based position in the transcribed system
    WaveVector target_k;
    std::int64_t source_shell = 0;
    std::vector<ConstraintTerm> terms;

    std::string str() const;
};

/// The 28 constraints exactly as transcribed.
std::vector<BilinearConstraint> transcribed_constraints();

/// Optional audit trail of the mechanical generation.
struct GenerationAudit {
    std::set<std::int64_t> raw_shells;    // shells receiving any raw product
    std::set<std::int64_t> final_shells;  // shells with surviving constraints
};

/// Regenerates the constraint system from the convolution arithmetic:
/// accumulates integer numerators per (target, factor pair), cancels
/// same-shell reversals, normalizes by gcd and leading sign, and checks the
/// result against the reference system (the transcription by default).
/// Throws GenerationMismatch on any difference.
std::vector<BilinearConstraint> generate_constraints(GenerationAudit* audit = nullptr);
std::vector<BilinearConstraint> generate_constraints(GenerationAudit* audit,
                                                     const std::vector<BilinearConstraint>& reference);

/// Residual of every constraint under the given amplitudes (support must lie
/// in the active modes).
std::vector<std::pair<int, Complex>> evaluate_constraints(const ScalarAmplitudeField& amps);

/// Support-propagation state for the nonexistence argument.
struct PropagationState {
    std::set<WaveVector> known_zero;
    std::set<WaveVector> known_nonzero;
    std::vector<std::string> log;
    bool complete = false;  // all of S1 and S2 in known_zero
};

/// Assuming alpha(k0) != 0 for k0 in S3, derives zero amplitudes to fixpoint:
/// a surviving single-product constraint with one factor known nonzero forces
/// the other factor to zero; zero sets stay closed under conjugation.
/// Rounds are batched so conclusions are independent of constraint order.
/// Throws PropagationStall if S1 and S2 are not fully zeroed.
PropagationState propagate(WaveVector assume_nonzero);
PropagationState propagate(WaveVector assume_nonzero,
                           const std::vector<BilinearConstraint>& constraints);

/// Enumeration showing which shells the S1 x S2 interaction can feed.
struct MuEliminationReport {
    std::vector<std::int64_t> candidates;  // shells examined
    std::set<std::int64_t> shells_hit;     // |h+j|^2 over S1 x S2
    bool only_shells_1_and_5 = false;
};

MuEliminationReport mu_plus_elimination_check(std::int64_t max_candidate = 100);

/// Full mechanical verdict: constraint regeneration, the eight propagation
/// cases, the forced-shell enumeration, and the norm-identity contradiction.
struct NonexistenceReport {
    bool generation_ok = false;
    int cases_passed = 0;
    int cases_total = 8;
    bool elimination_ok = false;
    bool dual_source_agree = false;  // transcribed and generated runs agree
    bool nonexistent = false;
    std::string transcript;
};

NonexistenceReport nonexistence_report();
NonexistenceReport nonexistence_report(const std::vector<BilinearConstraint>& reference);

}  // namespace ghostlab
