#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "ghostlab/commands.hpp"
#include "helpers.hpp"

using namespace ghostlab;
using testutil::rel_err;
using testutil::temp_dir;

namespace {

std::vector<std::vector<std::string>> parse_table(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::vector<std::string> cells;
        std::string tok;
        while (ls >> tok) cells.push_back(tok);
        if (!cells.empty()) rows.push_back(std::move(cells));
    }
    return rows;
}

int column(const std::vector<std::string>& header, const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return int(i);
    return -1;
}

// Test double with a deliberate sign defect: the shell-1 component of the
// advection term comes back negated.  (A global sign flip would slip through
// every homogeneous identity, and the field type forbids breaking
// divergence-freeness, so the defect lives in one eigenspace.)
SpectralField sign_broken_bilinear(const SpectralField& u, const SpectralField& v) {
    SpectralField b = bilinear(u, v);
    return b - eigenspace_project(b, 1) * 2.0;
}

}  // namespace

TEST_CASE("random fields are deterministic, normalized, and in range") {
    Rng a(1), b(1), c(2);
    SpectralField ua = random_field(a, 25, 1.5);
    SpectralField ub = random_field(b, 25, 1.5);
    SpectralField uc = random_field(c, 25, 1.5);
    CHECK(norm_as(ua - ub, 0.0) == 0.0);
    CHECK(norm_as(ua - uc, 0.0) > 1e-3);
    CHECK(rel_err(norm_as(ua, 0.0), 1.5) < 1e-12);
    for (const auto& [k, cf] : ua.modes()) CHECK(k.norm_sq() <= 25);
    CHECK_THROWS_AS(random_field(a, 0, 1.0), DomainError);
}

TEST_CASE("initial state honours inline amplitudes and the seeded default") {
    RunConfig inline_cfg = parse_run_config("u0 1 1 0.25 0\nu0 1 -1 0.25 0\n");
    SystemSpec sys = system_from_config(inline_cfg);
    SpectralField u = initial_state(inline_cfg, sys, 9);
    SpectralField ustar = sys.force() * 0.5;
    CHECK(norm_as(u - ustar, 0.0) < 1e-15);

    RunConfig def = parse_run_config("");
    SpectralField p1 = initial_state(def, sys, 5);
    SpectralField p2 = initial_state(def, sys, 5);
    SpectralField p3 = initial_state(def, sys, 6);
    CHECK(norm_as(p1 - p2, 0.0) == 0.0);
    CHECK(norm_as(p1 - p3, 0.0) > 1e-6);
    double dist = norm_as(p1 - ustar, 0.0);
    CHECK(dist > 1e-3);
    CHECK(dist < 0.2);

    RunConfig frozen = parse_run_config("u0_scale 0\n");
    CHECK(norm_as(initial_state(frozen, sys, 5) - ustar, 0.0) == 0.0);
}

TEST_CASE("error to exit-code mapping") {
    CHECK(exit_code_for(NonFinite("x")) == 3);
    CHECK(exit_code_for(GenerationMismatch("x")) == 4);
    CHECK(exit_code_for(PropagationStall("x")) == 4);
    CHECK(exit_code_for(ConfigError("x")) == 2);
    CHECK(exit_code_for(DomainError("x")) == 2);
    CHECK(exit_code_for(IoError("x")) == 2);
}

TEST_CASE("system assembly from config") {
    SystemSpec gal = system_from_config(parse_run_config("G 2.5\n"));
    CHECK(gal.kind == SystemSpec::Kind::compressed);
    CHECK(gal.lambda() == 2);
    CHECK(rel_err(norm_as(gal.force(), 0.0), 2.5) < 1e-13);
    CHECK(gal.galerkin.mode_shells == std::vector<std::int64_t>{1, 2, 5});

    SystemSpec ball = system_from_config(parse_run_config("mode ball\nradius_sq 10\n"));
    CHECK(ball.kind == SystemSpec::Kind::ball);
    CHECK(ball.radius_sq == 10);

    CHECK_THROWS_AS(system_from_config(parse_run_config("lambda 2.5\n")), ConfigError);
}

TEST_CASE("identity suite passes on the library operator and flags a broken one") {
    auto results = run_identity_suite(150, 42);
    REQUIRE(results.size() == 13);
    for (const auto& r : results) {
        CAPTURE(r.name);
        CHECK(r.pass);
        CHECK(r.max_residual <= r.tolerance);
        CHECK(r.samples > 0);
    }
    CHECK(results[0].name == "adjoint_antisymmetry");
    CHECK(results[4].name == "single_shell_annihilation");

    auto broken = run_identity_suite(40, 42, sign_broken_bilinear);
    bool self_orth_failed = false;
    for (const auto& r : broken)
        if (r.name == "self_orthogonality" && !r.pass) self_orth_failed = true;
    CHECK(self_orth_failed);
}

TEST_CASE("simulate command writes a trajectory table") {
    std::string dir = temp_dir("cmd_sim");
    RunConfig cfg = parse_run_config(
        "dt 1e-3\nT 0.05\nsample_every 5\nu0 1 1 0.25 0\nu0 1 -1 0.25 0\n");
    CommandResult res = cmd_simulate(cfg, dir, 1);
    CHECK(res.exit_code == 0);
    CHECK(res.message.find("final e") != std::string::npos);

    auto rows = parse_table(read_text_file(dir + "/trajectory.txt"));
    REQUIRE(rows.size() >= 2);
    const auto& header = rows[0];
    for (const char* col : {"t", "e", "E", "P", "A32_sq", "eta", "chained_residual"})
        CHECK(column(header, col) >= 0);
    int ce = column(header, "e"), cE = column(header, "E"), cP = column(header, "P");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rel_err(std::stod(rows[i][std::size_t(ce)]), 0.25) < 1e-12);
        CHECK(rel_err(std::stod(rows[i][std::size_t(cE)]), 0.5) < 1e-12);
        CHECK(rel_err(std::stod(rows[i][std::size_t(cP)]), 1.0) < 1e-12);
    }

    CommandResult missing = cmd_simulate(parse_run_config("T 1\n"), dir, 1);
    CHECK(missing.exit_code == 2);
    CHECK(missing.message.find("dt") != std::string::npos);
}

TEST_CASE("ghost-check command: ensembles, determinism across jobs, series export") {
    std::string cfg_text = "dt 1e-3\nT 2\nsample_every 10\nensemble 3\n";
    RunConfig cfg = parse_run_config(cfg_text);

    std::string dir1 = temp_dir("cmd_gc1");
    std::string dir2 = temp_dir("cmd_gc2");
    CommandResult r1 = cmd_ghost_check(cfg, dir1, 100, 1);
    CommandResult r2 = cmd_ghost_check(cfg, dir2, 100, 2);
    CHECK(r1.exit_code == 0);
    CHECK(r2.exit_code == 0);
    CHECK(r1.message == r2.message);
    CHECK(read_text_file(dir1 + "/ghost_report.txt") ==
          read_text_file(dir2 + "/ghost_report.txt"));

    auto rows = parse_table(read_text_file(dir1 + "/ghost_report.txt"));
    REQUIRE(rows.size() == 4);  // header + 3 seeds
    int cv = column(rows[0], "verdict");
    REQUIRE(cv >= 0);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const std::string& v = rows[i][std::size_t(cv)];
        CHECK((v == "NotGhost" || v == "ConvergedToSteadyState"));
    }
    CHECK(!std::filesystem::exists(dir1 + "/ghost_series.txt"));

    // Single-run ensembles also export the per-sample series.
    std::string dir3 = temp_dir("cmd_gc3");
    RunConfig one = parse_run_config("dt 1e-3\nT 1\nsample_every 10\n");
    CHECK(cmd_ghost_check(one, dir3, 7, 1).exit_code == 0);
    CHECK(std::filesystem::exists(dir3 + "/ghost_series.txt"));
    auto series = parse_table(read_text_file(dir3 + "/ghost_series.txt"));
    CHECK(series.size() > 2);
    CHECK(column(series[0], "eta_prime") >= 0);

    // The compressed system is the only mode the audit accepts.
    CommandResult ball = cmd_ghost_check(
        parse_run_config("dt 1e-3\nT 1\nmode ball\n"), dir3, 7, 1);
    CHECK(ball.exit_code == 2);
}

TEST_CASE("ghost-check command detects a held synthetic candidate") {
    std::string dir = temp_dir("cmd_gc_hold");
    RunConfig cfg = parse_run_config("dt 1e-3\nT 0.01\nsample_every 1\nhold_state 1\n");
    CommandResult res = cmd_ghost_check(cfg, dir, 11, 1);
    CHECK(res.exit_code == 0);
    CHECK(res.message.find("CandidateChainedGhost 1") != std::string::npos);
    auto rows = parse_table(read_text_file(dir + "/ghost_report.txt"));
    REQUIRE(rows.size() == 2);
    CHECK(rows[1][1] == "CandidateChainedGhost");
}

TEST_CASE("curves command emits one byte-stable file per coefficient") {
    RunConfig cfg = parse_run_config("e_grid_n 21\n");
    std::string dir1 = temp_dir("cmd_curves1");
    std::string dir2 = temp_dir("cmd_curves2");
    CHECK(cmd_curves(cfg, dir1).exit_code == 0);
    CHECK(cmd_curves(cfg, dir2).exit_code == 0);

    for (int mu : {4, 5, 25, 81}) {
        std::string name = "/curves_mu" + std::to_string(mu) + ".txt";
        std::string text = read_text_file(dir1 + name);
        CHECK(text == read_text_file(dir2 + name));

        auto rows = parse_table(text);
        REQUIRE(rows.size() == 22);  // header + 21 grid points
        int ce = column(rows[0], "e"), cu5 = column(rows[0], "E_u5");
        int cb = column(rows[0], "boundary");
        REQUIRE(ce >= 0);
        REQUIRE(cu5 >= 0);
        CHECK(std::stod(rows[1][std::size_t(ce)]) == 0.0);
        CHECK(std::abs(std::stod(rows[1][std::size_t(cu5)])) < 1e-13);
        CHECK(rows[1][std::size_t(cb)] == "1");
        CHECK(rel_err(std::stod(rows[21][std::size_t(ce)]), 0.25) < 1e-15);
        CHECK(rel_err(std::stod(rows[21][std::size_t(cu5)]), 0.5) < 1e-12);
        CHECK(rows[21][std::size_t(cb)] == "1");
    }

    CommandResult bad = cmd_curves(parse_run_config("mu_plus 2\n"), dir1);
    CHECK(bad.exit_code == 2);
    CHECK(bad.message.find("mu_plus") != std::string::npos);
}

TEST_CASE("verify-nonexistence command distinguishes clean and corrupted systems") {
    std::string dir = temp_dir("cmd_verify");
    CommandResult ok = cmd_verify_nonexistence(dir);
    CHECK(ok.exit_code == 0);
    CHECK(ok.message.find("NONEXISTENT") != std::string::npos);
    std::string transcript = read_text_file(dir + "/nonexistence_transcript.txt");
    CHECK(transcript.find("verdict: NONEXISTENT") != std::string::npos);

    auto bad = transcribed_constraints();
    bad[0].terms[0].coef += 2;
    CommandResult broken = cmd_verify_nonexistence(dir, &bad);
    CHECK(broken.exit_code == 4);
    CHECK(broken.message.find("GenerationMismatch") != std::string::npos);
}

TEST_CASE("identities command reports per-identity rows and failures") {
    std::string dir = temp_dir("cmd_ident");
    RunConfig cfg = parse_run_config("samples 40\n");
    CommandResult ok = cmd_identities(cfg, dir, 42);
    CHECK(ok.exit_code == 0);
    auto rows = parse_table(read_text_file(dir + "/identities_report.txt"));
    REQUIRE(rows.size() == 14);  // header + 13 identities
    CHECK(column(rows[0], "identity") == 0);
    CHECK(column(rows[0], "pass") >= 0);

    CommandResult broken = cmd_identities(cfg, dir, 42, sign_broken_bilinear);
    CHECK(broken.exit_code == 4);
    CHECK(broken.message.find("self_orthogonality") != std::string::npos);
}
