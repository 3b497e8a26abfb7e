#include "ghostlab/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "ghostlab/geometry.hpp"

namespace ghostlab {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

CommandResult guarded(const std::function<CommandResult()>& body) {
    try {
        return body();
    } catch (const Error& err) {
        return {exit_code_for(err), err.what()};
    } catch (const std::exception& err) {
        return {2, err.what()};
    }
}

std::int64_t integral_lambda(double lambda) {
    std::int64_t lam = std::llround(lambda);
    if (!(lambda > 0.0) || std::abs(lambda - double(lam)) > 1e-12)
        throw ConfigError("lambda must be a positive integer, got " + format_float(lambda));
    return lam;
}

void require_keys(const RunConfig& cfg, std::initializer_list<const char*> keys) {
    for (const char* key : keys)
        if (!cfg.has(key)) throw ConfigError(std::string("missing required key '") + key + "'");
}

/// |A^2 u - gamma g - beta u - alpha Au|
double chained_defect(const SpectralField& u, const SpectralField& g,
                      const ChainedCoefficients& cc) {
    SpectralField r = apply_stokes_power(u, 2.0) - g * cc.gamma - u * cc.beta -
                      apply_stokes_power(u, 1.0) * cc.alpha;
    return norm_as(r, 0.0);
}

void write_trajectory(const std::string& path, const Trajectory& traj, const SpectralField& g,
                      std::int64_t lambda) {
    TableWriter t({"t", "e", "E", "P", "A32_sq", "eta", "chained_residual"});
    double gsq = inner(g, g);
    for (std::size_t i = 0; i < traj.size(); ++i) {
        GhostDiagnostics d = diagnostics(traj.states[i], traj.derivatives[i], g, lambda);
        double res = kNan;
        try {
            res = chained_defect(traj.states[i], g, chained_coefficients(d));
        } catch (const Error&) {
            // degenerate diagnostics at this sample: residual stays NaN
        }
        t.row({format_float(traj.times[i]), format_float(d.e), format_float(d.E),
               format_float(d.P), format_float(d.A32_sq), format_float(d.E / gsq),
               format_float(res)});
    }
    write_text_file(path, t.str());
}

void write_ghost_series(const std::string& path, const GhostCheckReport& rep) {
    TableWriter t({"t", "eta", "eta_prime", "chained_residual", "set_condition", "udot_norm"});
    for (const GhostCheckSample& s : rep.samples)
        t.row({format_float(s.t), format_float(s.eta), format_float(s.eta_prime),
               format_float(s.chained_residual), format_float(s.set_condition),
               format_float(s.udot_norm)});
    write_text_file(path, t.str());
}

/// Positive-path harness: evaluate the ghost tests on a held (non-integrated)
/// state, either the inline u0 or a synthetic chained candidate.
GhostCheckReport held_state_report(const RunConfig& cfg, const GalerkinSpec& gspec,
                                   std::uint64_t seed) {
    SpectralField u = SpectralField::zero(gspec.max_shell());
    if (!cfg.u0.empty()) {
        u = SpectralField::from_scalar(ScalarAmplitudeField::make(cfg.u0), gspec.max_shell());
    } else {
        if (gspec.lambda != 2 || !gspec.contains_shell(1) || !gspec.contains_shell(2) ||
            !gspec.contains_shell(5) || !cfg.force_pattern.empty())
            throw ConfigError(
                "hold_state without inline u0 requires lambda 2, shells {1,2,5}, default force");
        Rng rng(seed);
        double G = norm_as(gspec.force, 0.0);
        u = make_chained_state(G, G * G / 320.0, rng).u;
    }
    int n = std::max(4, int(std::llround(cfg.T / (cfg.dt * cfg.sample_every))) + 1);
    Trajectory traj;
    SpectralField udot = rhs_compressed(u, gspec);
    for (int i = 0; i < n; ++i) {
        traj.times.push_back(cfg.dt * cfg.sample_every * double(i));
        traj.states.push_back(u);
        traj.derivatives.push_back(udot);
    }
    return ghost_check_evaluate(traj, gspec.force, gspec.lambda, cfg.resolved_eps_eta(),
                                cfg.eps_chained);
}

}  // namespace

int exit_code_for(const Error& err) {
    switch (err.code()) {
        case errc::nonfinite:
            return 3;
        case errc::generation_mismatch:
        case errc::propagation_stall:
            return 4;
        default:
            return 2;
    }
}

SpectralField random_field(Rng& rng, std::int64_t radius_sq, double norm) {
    if (radius_sq < 1) throw DomainError("random_field needs radius_sq >= 1");
    std::vector<std::pair<WaveVector, Complex>> amps;
    int kmax = int(std::sqrt(double(radius_sq))) + 1;
    for (int k1 = 0; k1 <= kmax; ++k1)
        for (int k2 = (k1 == 0 ? 1 : -kmax); k2 <= kmax; ++k2) {
            std::int64_t nsq = std::int64_t(k1) * k1 + std::int64_t(k2) * k2;
            if (nsq == 0 || nsq > radius_sq) continue;
            double decay = 1.0 / double(nsq);
            amps.emplace_back(WaveVector{k1, k2},
                              decay * Complex(rng.next_symmetric(), rng.next_symmetric()));
        }
    SpectralField u = SpectralField::from_scalar(ScalarAmplitudeField::make(amps), radius_sq);
    double n0 = norm_as(u, 0.0);
    if (!(n0 > 0.0)) throw NonFinite("random field came out empty");
    return u * (norm / n0);
}

SystemSpec system_from_config(const RunConfig& cfg) {
    std::int64_t lam = integral_lambda(cfg.lambda);
    EigenforceSpec fs;
    fs.lambda = lam;
    fs.magnitude = cfg.G;
    for (const auto& [k, a] : cfg.force_pattern) fs.pattern[k] = a;
    SpectralField g = make_eigenforce(fs);
    if (cfg.mode == "ball") return SystemSpec::ball(cfg.radius_sq, std::move(g), lam);
    return SystemSpec::compressed(GalerkinSpec::make(cfg.shells, std::move(g), lam));
}

SpectralField initial_state(const RunConfig& cfg, const SystemSpec& spec, std::uint64_t seed) {
    std::int64_t radius =
        spec.kind == SystemSpec::Kind::ball ? spec.radius_sq : spec.galerkin.max_shell();
    if (!cfg.u0.empty())
        return SpectralField::from_scalar(ScalarAmplitudeField::make(cfg.u0), radius) +
               SpectralField::zero(radius);
    SpectralField u = spec.force() * (1.0 / double(spec.lambda())) + SpectralField::zero(radius);
    if (cfg.u0_scale <= 0.0) return u;

    std::vector<WaveVector> half;
    if (spec.kind == SystemSpec::Kind::ball) {
        int kmax = int(std::sqrt(double(spec.radius_sq))) + 1;
        for (int k1 = 0; k1 <= kmax; ++k1)
            for (int k2 = (k1 == 0 ? 1 : -kmax); k2 <= kmax; ++k2) {
                std::int64_t nsq = std::int64_t(k1) * k1 + std::int64_t(k2) * k2;
                if (nsq != 0 && nsq <= spec.radius_sq) half.push_back({k1, k2});
            }
    } else {
        for (std::int64_t mu : spec.galerkin.mode_shells)
            for (WaveVector k : shell_vectors(mu))
                if (k.k1 > 0 || (k.k1 == 0 && k.k2 > 0)) half.push_back(k);
    }
    std::sort(half.begin(), half.end(), [](WaveVector a, WaveVector b) {
        return std::tuple(a.norm_sq(), a.k1, a.k2) < std::tuple(b.norm_sq(), b.k1, b.k2);
    });

    Rng rng(seed);
    std::vector<std::pair<WaveVector, Complex>> pert;
    pert.reserve(half.size());
    for (WaveVector k : half) {
        double s = cfg.u0_scale / double(k.norm_sq());
        pert.emplace_back(k, s * Complex(rng.next_symmetric(), rng.next_symmetric()));
    }
    return u + SpectralField::from_scalar(ScalarAmplitudeField::make(pert), radius);
}

CommandResult cmd_simulate(const RunConfig& cfg, const std::string& out_dir, std::uint64_t seed) {
    return guarded([&]() -> CommandResult {
        require_keys(cfg, {"dt", "T"});
        SystemSpec spec = system_from_config(cfg);
        SpectralField u0 = initial_state(cfg, spec, seed);
        Trajectory traj = integrate(u0, spec, cfg.T, cfg.dt, cfg.sample_every);
        ensure_directory(out_dir);
        write_trajectory(out_dir + "/trajectory.txt", traj, spec.force(), spec.lambda());
        GhostDiagnostics d =
            diagnostics(traj.states.back(), traj.derivatives.back(), spec.force(), spec.lambda());
        return {0, "final e " + format_float(d.e) + "  E " + format_float(d.E) + "  P " +
                       format_float(d.P)};
    });
}

CommandResult cmd_ghost_check(const RunConfig& cfg, const std::string& out_dir,
                              std::uint64_t seed, int jobs) {
    return guarded([&]() -> CommandResult {
        require_keys(cfg, {"dt", "T"});
        if (cfg.mode != "galerkin")
            throw ConfigError("ghost-check runs the eigenspace-compressed system (mode galerkin)");
        SystemSpec sys = system_from_config(cfg);
        const GalerkinSpec& gspec = sys.galerkin;
        int n = cfg.ensemble;
        double eps_eta = cfg.resolved_eps_eta();

        std::vector<GhostCheckReport> reports{std::size_t(n)};
        std::vector<std::exception_ptr> failures{std::size_t(n)};
        auto run_one = [&](int i) {
            try {
                std::uint64_t s = seed + std::uint64_t(i);
                if (cfg.hold_state) {
                    reports[std::size_t(i)] = held_state_report(cfg, gspec, s);
                } else {
                    SpectralField u0 = initial_state(cfg, sys, s);
                    reports[std::size_t(i)] = ghost_check(u0, gspec, cfg.T, cfg.dt,
                                                          cfg.sample_every, eps_eta,
                                                          cfg.eps_chained);
                }
            } catch (...) {
                failures[std::size_t(i)] = std::current_exception();
            }
        };

        int workers = std::clamp(jobs, 1, n);
        if (workers == 1) {
            for (int i = 0; i < n; ++i) run_one(i);
        } else {
            std::atomic<int> next{0};
            std::vector<std::thread> pool;
            pool.reserve(std::size_t(workers));
            for (int w = 0; w < workers; ++w)
                pool.emplace_back([&] {
                    for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) run_one(i);
                });
            for (std::thread& th : pool) th.join();
        }
        for (const std::exception_ptr& p : failures)
            if (p) std::rethrow_exception(p);

        ensure_directory(out_dir);
        TableWriter t({"seed", "verdict", "eta_derivative_max", "chained_residual_max",
                       "udot_final", "set_condition_final"});
        int candidate = 0, not_ghost = 0, converged = 0;
        for (int i = 0; i < n; ++i) {
            const GhostCheckReport& r = reports[std::size_t(i)];
            if (r.verdict == GhostVerdict::candidate_chained_ghost) ++candidate;
            if (r.verdict == GhostVerdict::not_ghost) ++not_ghost;
            if (r.verdict == GhostVerdict::converged_to_steady_state) ++converged;
            double setc = r.samples.empty() ? kNan : r.samples.back().set_condition;
            t.row({std::to_string(seed + std::uint64_t(i)), ghost_verdict_name(r.verdict),
                   format_float(r.eta_derivative_max), format_float(r.chained_residual_max),
                   format_float(r.udot_final), format_float(setc)});
        }
        write_text_file(out_dir + "/ghost_report.txt", t.str());
        if (n == 1) write_ghost_series(out_dir + "/ghost_series.txt", reports[0]);

        return {0, "verdicts: CandidateChainedGhost " + std::to_string(candidate) + ", NotGhost " +
                       std::to_string(not_ghost) + ", ConvergedToSteadyState " +
                       std::to_string(converged)};
    });
}

CommandResult cmd_curves(const RunConfig& cfg, const std::string& out_dir) {
    return guarded([&]() -> CommandResult {
        std::int64_t lam = integral_lambda(cfg.lambda);
        double G = cfg.G;
        int n = cfg.e_grid_n;
        std::vector<double> grid(std::size_t(n), 0.0);
        for (int i = 0; i < n; ++i) grid[std::size_t(i)] = (G * G / 4.0) * double(i) / double(n - 1);

        ensure_directory(out_dir);
        for (std::int64_t mu : cfg.mu_plus) {
            std::vector<ParabolaPoint> pts = parabola_curve(double(mu), G, grid);
            TableWriter t({"e", "E_u1", "E_u2", "E_u3", "E_u4", "E_u5", "E_lower_bound",
                           "interior", "boundary"});
            for (const ParabolaPoint& p : pts) {
                double u1 = G * std::sqrt(std::max(p.e, 0.0));
                double u4_disc = G * G * G * G - 4.0 * p.e * G * G;
                double u4 = (G * G - std::sqrt(std::max(u4_disc, 0.0))) / 2.0;
                double bound = kNan;
                try {
                    bound = enstrophy_lower_bound(p.e, double(lam), G, cfg.c_bg);
                } catch (const DomainError&) {
                    // bound undefined where e * lambda <= 1
                }
                t.row({format_float(p.e), format_float(u1), format_float(p.e),
                       format_float(2.0 * p.e), format_float(u4), format_float(p.E),
                       format_float(bound), p.interior ? "1" : "0", p.boundary ? "1" : "0"});
            }
            write_text_file(out_dir + "/curves_mu" + std::to_string(mu) + ".txt", t.str());
        }
        return {0, "wrote " + std::to_string(cfg.mu_plus.size()) + " curve files over e in [0, " +
                       format_float(G * G / 4.0) + "]"};
    });
}

CommandResult cmd_verify_nonexistence(const std::string& out_dir,
                                      const std::vector<BilinearConstraint>* reference_override) {
    return guarded([&]() -> CommandResult {
        NonexistenceReport rep =
            reference_override ? nonexistence_report(*reference_override) : nonexistence_report();
        ensure_directory(out_dir);
        write_text_file(out_dir + "/nonexistence_transcript.txt", rep.transcript);
        if (rep.nonexistent)
            return {0, "verdict: NONEXISTENT (28 constraints regenerated, " +
                           std::to_string(rep.cases_passed) + "/" +
                           std::to_string(rep.cases_total) +
                           " propagation cases, shell-5 elimination)"};
        std::string step;
        if (!rep.generation_ok)
            step = errc_name(errc::generation_mismatch);
        else if (rep.cases_passed < rep.cases_total)
            step = std::string(errc_name(errc::propagation_stall)) + " (" +
                   std::to_string(rep.cases_passed) + "/" + std::to_string(rep.cases_total) +
                   " cases)";
        else if (!rep.elimination_ok)
            step = "forced-shell elimination";
        else
            step = std::string(errc_name(errc::generation_mismatch)) + " (dual-source fixpoints)";
        return {4, "verification failed: " + step};
    });
}

namespace {

/// max(1, values...) residual denominator.
double scale_of(std::initializer_list<double> values) {
    double s = 1.0;
    for (double v : values) s = std::max(s, std::abs(v));
    return s;
}

double dot4(const std::array<double, 4>& a, const std::array<double, 4>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

double norm4(const std::array<double, 4>& a) { return std::sqrt(dot4(a, a)); }

std::array<double, 4> random4(Rng& rng) {
    return {rng.next_symmetric(), rng.next_symmetric(), rng.next_symmetric(),
            rng.next_symmetric()};
}

}  // namespace

std::vector<IdentityResult> run_identity_suite(int samples, std::uint64_t seed,
                                               const BilinearFn& bilinear_override) {
    if (samples < 1) throw ConfigError("identity suite needs samples >= 1");
    BilinearFn bl = bilinear_override
                        ? bilinear_override
                        : [](const SpectralField& a, const SpectralField& b) {
                              return bilinear(a, b);
                          };
    Rng root(seed);
    constexpr std::int64_t kRadiusSq = 25;
    static constexpr std::int64_t kSingleShells[] = {1, 2, 4, 5, 8, 9, 10, 13, 16, 25};

    IdentityResult adjoint{"adjoint_antisymmetry", 0.0, 1e-11, samples, false};
    IdentityResult self_orth{"self_orthogonality", 0.0, 1e-11, samples, false};
    IdentityResult enst_orth{"enstrophy_orthogonality", 0.0, 1e-11, samples, false};
    IdentityResult strong{"strong_enstrophy_invariance", 0.0, 1e-11, samples, false};
    IdentityResult single{"single_shell_annihilation", 0.0, 1e-12, samples, false};

    for (int i = 0; i < samples; ++i) {
        Rng rng = root.fork(std::uint64_t(i));
        SpectralField u = random_field(rng, kRadiusSq);
        SpectralField v = random_field(rng, kRadiusSq);
        SpectralField w = random_field(rng, kRadiusSq);
        SpectralField au = apply_stokes_power(u, 1.0);
        SpectralField av = apply_stokes_power(v, 1.0);
        SpectralField buv = bl(u, v);
        SpectralField buw = bl(u, w);
        SpectralField buu = bl(u, u);
        SpectralField bavv = bl(av, v);
        double nuv = norm_as(buv, 0.0);
        double nuw = norm_as(buw, 0.0);

        adjoint.max_residual = std::max(
            adjoint.max_residual, std::abs(inner(buv, w) + inner(buw, v)) / scale_of({nuv, nuw}));
        self_orth.max_residual =
            std::max(self_orth.max_residual, std::abs(inner(buv, v)) / scale_of({nuv}));
        enst_orth.max_residual =
            std::max(enst_orth.max_residual,
                     std::abs(inner(buu, au)) /
                         scale_of({norm_as(buu, 0.0) * norm_as(u, 1.0)}));
        strong.max_residual =
            std::max(strong.max_residual,
                     std::abs(inner(bavv, u) - inner(buv, av)) /
                         scale_of({norm_as(bavv, 0.0), nuv * norm_as(v, 1.0)}));

        std::int64_t shell = kSingleShells[rng.next_u64() % std::size(kSingleShells)];
        SpectralField s = eigenspace_project(random_field(rng, kRadiusSq), shell);
        double ssq = norm_as(s, 0.0);
        if (ssq > 0.0)
            single.max_residual = std::max(single.max_residual,
                                           norm_as(bl(s, s), 0.0) / (ssq * ssq));
    }

    int gsamples = std::max(32, samples / 10);
    IdentityResult structure{"stationary_structure", 0.0, 1e-9, gsamples, false};
    IdentityResult frame_orth{"frame_orthonormality", 0.0, 1e-10, gsamples, false};
    IdentityResult frame_coords{"frame_coordinates", 0.0, 1e-9, gsamples, false};
    IdentityResult stokes_rep{"stokes_matrix_reproduction", 0.0, 1e-9, gsamples, false};
    IdentityResult stokes_spd{"stokes_matrix_spd", 0.0, 0.5, gsamples, false};
    IdentityResult tensor_rep{"tensor_reproduction", 0.0, 1e-12, gsamples, false};
    IdentityResult tensor_skew{"tensor_skew_family", 0.0, 1e-12, gsamples, false};
    IdentityResult tensor_sym{"tensor_output_symmetry", 0.0, 1e-12, gsamples, false};

    for (int i = 0; i < gsamples; ++i) {
        Rng rng = root.fork(0x100000 + std::uint64_t(i));
        double G = 0.5 + rng.next_unit();
        double w = (0.1 + 0.85 * rng.next_unit()) * G * G / 160.0;
        ChainedState st = make_chained_state(G, w, rng);
        SpectralField au = apply_stokes_power(st.u, 1.0);
        SpectralField udot = orthogonal_complement(random_field(rng, 5), {st.g, st.u, au});
        udot = udot * ((0.2 + 0.3 * rng.next_unit()) * G / norm_as(udot, 0.0));

        GhostDiagnostics d = diagnostics(st.u, udot, st.g, 2);
        double gg = G * G;

        StructureResiduals sr = structure_residuals(st.u, udot, st.g, 2);
        structure.max_residual =
            std::max(structure.max_residual, sr.max_abs() / scale_of({gg}));

        Frame fr = old_frame(st.u, udot, st.g);
        frame_orth.max_residual =
            std::max(frame_orth.max_residual, fr.max_orthonormality_defect());

        SpectralField b = st.g - au - udot;
        std::array<double, 4> cu = coordinates(fr, st.u);
        std::array<double, 4> cg = coordinates(fr, st.g);
        std::array<double, 4> cud = coordinates(fr, udot);
        std::array<double, 4> cau = coordinates(fr, au);
        std::array<double, 4> cb = coordinates(fr, b);

        double eta1 = std::sqrt(d.e - d.E * d.E / gg);
        double a2 = (d.E - d.E * d.P / gg) / eta1;
        double q = std::sqrt(std::max(d.P - d.P * d.P / gg - a2 * a2, 0.0));
        double udn = std::sqrt(d.udot_sq);
        std::array<std::array<double, 4>, 2> chk_u = {{cu, {d.E / d.G, eta1, 0.0, 0.0}}};
        std::array<std::array<double, 4>, 2> chk_g = {{cg, {d.G, 0.0, 0.0, 0.0}}};
        std::array<std::array<double, 4>, 2> chk_ud = {{cud, {0.0, 0.0, udn, 0.0}}};
        std::array<std::array<double, 4>, 2> chk_au = {{cau, {d.P / d.G, a2, 0.0, q}}};
        std::array<std::array<double, 4>, 2> chk_b = {{cb, {d.G - d.P / d.G, -a2, -udn, -q}}};
        double coord_scale = scale_of({d.G, std::sqrt(d.P), udn});
        for (const auto& pair : {chk_u, chk_g, chk_ud, chk_au, chk_b})
            for (int j = 0; j < 4; ++j)
                frame_coords.max_residual =
                    std::max(frame_coords.max_residual,
                             std::abs(pair[0][j] - pair[1][j]) / coord_scale);

        StokesMatrix sm = stokes_matrix(d, 2.0);
        std::array<double, 4> smu = sm.apply(cu);
        for (int j = 0; j < 4; ++j)
            stokes_rep.max_residual = std::max(
                stokes_rep.max_residual, std::abs(smu[j] - cau[j]) / scale_of({std::sqrt(d.P)}));
        if (!sm.is_spd()) stokes_spd.max_residual = 1.0;

        NonlinearTensor nt = nonlinear_tensor(cu[0], cu[1], cb);
        std::array<double, 4> rep = nt.apply(cu, cu);
        for (int j = 0; j < 4; ++j)
            tensor_rep.max_residual = std::max(tensor_rep.max_residual,
                                               std::abs(rep[j] - cb[j]) / scale_of({norm4(cb)}));
        for (int r = 0; r < 4; ++r) {
            std::array<double, 4> x = random4(rng);
            std::array<double, 4> y = random4(rng);
            std::array<double, 4> z = random4(rng);
            std::array<double, 4> tux = nt.apply(cu, x);
            std::array<double, 4> tuy = nt.apply(cu, y);
            double skew = dot4(tux, y) + dot4(tuy, x);
            tensor_skew.max_residual = std::max(
                tensor_skew.max_residual,
                std::abs(skew) / scale_of({norm4(tux) * norm4(y), norm4(tuy) * norm4(x)}));
            double sym = dot4(nt.apply(x, y), z) - dot4(nt.apply(z, y), x);
            tensor_sym.max_residual = std::max(
                tensor_sym.max_residual,
                std::abs(sym) / scale_of({norm4(nt.apply(x, y)) * norm4(z),
                                          norm4(nt.apply(z, y)) * norm4(x)}));
        }
    }

    std::vector<IdentityResult> out = {adjoint,     self_orth,  enst_orth,  strong,
                                       single,      structure,  frame_orth, frame_coords,
                                       stokes_rep,  stokes_spd, tensor_rep, tensor_skew,
                                       tensor_sym};
    for (IdentityResult& r : out) r.pass = r.max_residual <= r.tolerance;
    return out;
}

CommandResult cmd_identities(const RunConfig& cfg, const std::string& out_dir, std::uint64_t seed,
                             const BilinearFn& bilinear_override) {
    return guarded([&]() -> CommandResult {
        std::vector<IdentityResult> results =
            run_identity_suite(cfg.samples, seed, bilinear_override);
        ensure_directory(out_dir);
        TableWriter t({"identity", "max_residual", "tolerance", "samples", "pass"});
        std::string failing;
        for (const IdentityResult& r : results) {
            t.row({r.name, format_float(r.max_residual), format_float(r.tolerance),
                   std::to_string(r.samples), r.pass ? "1" : "0"});
            if (!r.pass) failing += (failing.empty() ? "" : ", ") + r.name;
        }
        write_text_file(out_dir + "/identities_report.txt", t.str());
        if (failing.empty())
            return {0, "all " + std::to_string(results.size()) + " identities within tolerance"};
        return {4, "identities outside tolerance: " + failing};
    });
}

}  // namespace ghostlab
