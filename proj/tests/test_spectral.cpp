#include <algorithm>
#include <cmath>
#include <complex>
#include <set>

#include "doctest.h"
#include "ghostlab/commands.hpp"
#include "ghostlab/spectral.hpp"
#include "helpers.hpp"

using namespace ghostlab;
using testutil::from_amps;
using testutil::rel_err;

namespace {
const Complex I{0.0, 1.0};
}

TEST_CASE("scalar amplitudes enforce reality and fill conjugate partners") {
    auto a = ScalarAmplitudeField::make({{{1, 0}, Complex{1.0, 2.0}}});
    CHECK(a.size() == 2);
    CHECK(a.amplitude({-1, 0}) == Complex{1.0, -2.0});
    CHECK(a.amplitude({3, 3}) == Complex{0.0, 0.0});

    CHECK_THROWS_AS(ScalarAmplitudeField::make(
                        {{{1, 0}, Complex{1.0, 2.0}}, {{-1, 0}, Complex{1.0, 1.0}}}),
                    RealityViolation);
    CHECK_THROWS_AS(ScalarAmplitudeField::make(
                        {{{1, 0}, Complex{1.0, 0.0}}, {{1, 0}, Complex{2.0, 0.0}}}),
                    RealityViolation);
    CHECK_THROWS_AS(ScalarAmplitudeField::make({{{0, 0}, Complex{1.0, 0.0}}}), SupportViolation);
    double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(ScalarAmplitudeField::make({{{1, 0}, Complex{inf, 0.0}}}), NonFinite);
}

TEST_CASE("field construction validates support, truncation, divergence, reality") {
    // u_hat(1,0) = (0, i) is divergence free; the partner is filled in.
    SpectralField u = SpectralField::make({{{1, 0}, ModeCoeff{Complex{0, 0}, I}}}, 1);
    CHECK(u.size() == 2);
    CHECK(u.coeff({-1, 0}).y == Complex{0.0, -1.0});
    CHECK(u.all_finite());

    CHECK_THROWS_AS(SpectralField::zero(0), TruncationViolation);
    CHECK_THROWS_AS(SpectralField::make({{{0, 0}, ModeCoeff{I, I}}}, 4), SupportViolation);
    CHECK_THROWS_AS(SpectralField::make({{{2, 0}, ModeCoeff{Complex{0, 0}, I}}}, 1),
                    TruncationViolation);
    CHECK_THROWS_AS(SpectralField::make({{{1, 0}, ModeCoeff{I, Complex{0, 0}}}}, 1),
                    DivergenceViolation);
    CHECK_THROWS_AS(SpectralField::make({{{1, 0}, ModeCoeff{Complex{0, 0}, I}},
                                         {{-1, 0}, ModeCoeff{Complex{0, 0}, I}}},
                                        1),
                    RealityViolation);
}

TEST_CASE("scalar lift and projection are mutually inverse") {
    Rng rng(7);
    SpectralField u = random_field(rng, 25, 2.5);
    ScalarAmplitudeField a = u.to_scalar();
    SpectralField back = SpectralField::from_scalar(a, 25);
    CHECK(norm_as(u - back, 0.0) < 1e-14 * norm_as(u, 0.0));

    // |u|^2 equals the sum of squared scalar amplitudes.
    double sum = 0.0;
    for (const auto& [k, alpha] : a.amplitudes()) sum += std::norm(alpha);
    CHECK(rel_err(sum, inner(u, u)) < 1e-13);

    // Lift of a single amplitude matches the closed form i alpha k_perp / |k|.
    SpectralField one = from_amps({{{1, 0}, Complex{1.0, 0.0}}}, 1);
    CHECK(std::abs(one.coeff({1, 0}).x) == 0.0);
    CHECK(one.coeff({1, 0}).y == I);
}

TEST_CASE("shells enumerate the lattice and the Stokes spectrum") {
    CHECK(shell_vectors(1).size() == 4);
    CHECK(shell_vectors(2).size() == 4);
    CHECK(shell_vectors(5).size() == 8);
    CHECK(shell_vectors(25).size() == 12);
    CHECK(shell_vectors(3).empty());

    for (std::int64_t mu : {1, 2, 5, 25}) {
        auto vs = shell_vectors(mu);
        CHECK(std::is_sorted(vs.begin(), vs.end()));
        std::set<WaveVector> uniq(vs.begin(), vs.end());
        CHECK(uniq.size() == vs.size());
        for (WaveVector k : vs) {
            CHECK(k.norm_sq() == mu);
            CHECK(uniq.count(-k) == 1);
        }
    }

    for (std::int64_t mu : {1, 2, 4, 5, 8, 9, 10, 13, 16, 17, 18, 20, 25})
        CHECK(in_stokes_spectrum(mu));
    for (std::int64_t mu : {3, 6, 7, 11, 12, 14, 15, 19, 21, 22, 23, 24})
        CHECK_FALSE(in_stokes_spectrum(mu));
}

TEST_CASE("Stokes powers scale modes by |k|^(2s)") {
    Rng rng(11);
    SpectralField u = random_field(rng, 25, 1.0);

    SpectralField au = apply_stokes_power(u, 1.0);
    for (const auto& [k, c] : u.modes()) {
        ModeCoeff want = c * double(k.norm_sq());
        ModeCoeff got = au.coeff(k);
        CHECK(std::abs(got.x - want.x) < 1e-15 * std::sqrt(want.norm_sq() + 1.0));
        CHECK(std::abs(got.y - want.y) < 1e-15 * std::sqrt(want.norm_sq() + 1.0));
    }
    CHECK(norm_as(apply_stokes_power(u, 0.0) - u, 0.0) == 0.0);

    for (double s : {0.0, 0.5, 1.0, 1.5, 2.0}) {
        SpectralField as = apply_stokes_power(u, s);
        CHECK(rel_err(norm_as(u, s), std::sqrt(inner(as, as))) < 1e-13);
    }
    CHECK(rel_err(inner(au, u), norm_as(u, 0.5) * norm_as(u, 0.5)) < 1e-13);
}

TEST_CASE("inner product is symmetric and diagonal across modes") {
    Rng rng(13);
    SpectralField u = random_field(rng, 25, 1.0);
    SpectralField v = random_field(rng, 25, 0.7);
    CHECK(inner(u, v) == inner(v, u));
    CHECK(rel_err(inner(u + v, u + v), inner(u, u) + 2.0 * inner(u, v) + inner(v, v)) < 1e-12);

    SpectralField a = from_amps({{{1, 0}, Complex{1.0, 0.0}}}, 2);
    SpectralField b = from_amps({{{0, 1}, Complex{1.0, 0.0}}}, 2);
    CHECK(inner(a, b) == 0.0);
    CHECK(rel_err(inner(a, a), 2.0) < 1e-15);  // both k and -k contribute
}

TEST_CASE("eigenspace projection splits a field by shells") {
    Rng rng(17);
    SpectralField u = random_field(rng, 25, 1.0);

    SpectralField sum = SpectralField::zero(u.radius_sq());
    for (std::int64_t mu = 1; mu <= 25; ++mu) {
        if (!in_stokes_spectrum(mu)) {
            CHECK(eigenspace_project(u, mu).size() == 0);
            continue;
        }
        SpectralField part = eigenspace_project(u, mu);
        for (const auto& [k, c] : part.modes()) CHECK(k.norm_sq() == mu);
        CHECK(norm_as(eigenspace_project(part, mu) - part, 0.0) == 0.0);
        sum = sum + part;
    }
    CHECK(norm_as(sum - u, 0.0) < 1e-14);
}

TEST_CASE("eigenforce construction") {
    SpectralField g = make_eigenforce({.lambda = 2, .pattern = {}, .magnitude = 1.0});
    CHECK(g.size() == 4);
    CHECK(rel_err(norm_as(g, 0.0), 1.0) < 1e-14);
    ScalarAmplitudeField a = g.to_scalar();
    for (WaveVector k : shell_vectors(2)) CHECK(std::abs(a.amplitude(k) - 0.5) < 1e-14);
    // Force is an eigenvector: A g = lambda g.
    CHECK(norm_as(apply_stokes_power(g, 1.0) - g * 2.0, 0.0) < 1e-14);

    SpectralField g5 = make_eigenforce({.lambda = 5, .pattern = {}, .magnitude = 3.0});
    CHECK(rel_err(norm_as(g5, 0.0), 3.0) < 1e-14);
    CHECK(norm_as(apply_stokes_power(g5, 1.0) - g5 * 5.0, 0.0) < 1e-13);

    SpectralField gp = make_eigenforce(
        {.lambda = 2, .pattern = {{{1, 1}, Complex{2.0, 0.0}}}, .magnitude = 3.0});
    CHECK(gp.size() == 2);  // the pattern mode and its conjugate partner
    CHECK(rel_err(norm_as(gp, 0.0), 3.0) < 1e-14);
    CHECK(rel_err(std::abs(gp.to_scalar().amplitude({1, 1})), 3.0 / std::sqrt(2.0)) < 1e-14);

    CHECK_THROWS_AS(make_eigenforce({.lambda = 3, .pattern = {}, .magnitude = 1.0}),
                    NotAnEigenvalue);
    CHECK_THROWS_AS(make_eigenforce({.lambda = 2, .pattern = {}, .magnitude = -1.0}), DomainError);
    CHECK_THROWS_AS(
        make_eigenforce({.lambda = 2, .pattern = {{{1, 0}, Complex{1.0, 0.0}}}, .magnitude = 1.0}),
        ShellViolation);
}

TEST_CASE("advection truncation discards only modes past the output radius") {
    Rng rng(23);
    SpectralField u = random_field(rng, 5, 1.0);
    SpectralField v = random_field(rng, 5, 1.0);

    SpectralField full = bilinear(u, v);
    SpectralField cut = bilinear(u, v, 5);
    for (const auto& [k, c] : cut.modes()) {
        CHECK(k.norm_sq() <= 5);
        ModeCoeff d = full.coeff(k) - c;
        CHECK(std::sqrt(d.norm_sq()) < 1e-15);
    }
    for (const auto& [k, c] : full.modes())
        if (k.norm_sq() <= 5) CHECK(std::sqrt((cut.coeff(k) - c).norm_sq()) < 1e-15);

    // Output of the full overload is a valid field: reality plus divergence.
    ScalarAmplitudeField alpha = full.to_scalar();
    SpectralField rebuilt = SpectralField::from_scalar(alpha, full.radius_sq());
    CHECK(norm_as(rebuilt - full, 0.0) < 1e-13 * std::max(1.0, norm_as(full, 0.0)));
}
