#include "ghostlab/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace ghostlab {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

bool is_canonical(WaveVector k) { return k.k1 > 0 || (k.k1 == 0 && k.k2 > 0); }

WaveVector canonical(WaveVector k) { return is_canonical(k) ? k : WaveVector{-k.k1, -k.k2}; }

/// Sampled-grid derivative, second order: three-point stencils tolerant of
/// non-uniform spacing, one-sided at the ends.
std::vector<double> d_dt(const std::vector<double>& t, const std::vector<double>& y) {
    std::size_t n = t.size();
    std::vector<double> d(n, 0.0);
    if (n < 2) return d;
    if (n == 2) {
        d[0] = d[1] = (y[1] - y[0]) / (t[1] - t[0]);
        return d;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        double h1 = t[i] - t[i - 1];
        double h2 = t[i + 1] - t[i];
        d[i] = (h1 * h1 * y[i + 1] - h2 * h2 * y[i - 1] + (h2 * h2 - h1 * h1) * y[i]) /
               (h1 * h2 * (h1 + h2));
    }
    {
        double h1 = t[1] - t[0];
        double h2 = t[2] - t[1];
        d[0] = -(2.0 * h1 + h2) / (h1 * (h1 + h2)) * y[0] + (h1 + h2) / (h1 * h2) * y[1] -
               h1 / (h2 * (h1 + h2)) * y[2];
    }
    {
        double h1 = t[n - 2] - t[n - 3];
        double h2 = t[n - 1] - t[n - 2];
        d[n - 1] = h2 / (h1 * (h1 + h2)) * y[n - 3] - (h1 + h2) / (h1 * h2) * y[n - 2] +
                   (h1 + 2.0 * h2) / (h2 * (h1 + h2)) * y[n - 1];
    }
    return d;
}

struct EtdCoef {
    double e1 = 0.0, e2 = 0.0, q = 0.0, f1 = 0.0, f2 = 0.0, f3 = 0.0;
};

/// Scheme weights for one diagonal entry z = -dt |k|^2.  Near z = 0 the
/// closed forms lose digits to cancellation, so they are replaced by an
/// average over a unit circle around z.
EtdCoef make_etd(double z, double dt) {
    EtdCoef c;
    c.e1 = std::exp(z);
    c.e2 = std::exp(0.5 * z);
    if (std::abs(z) >= 0.5) {
        double z3 = z * z * z;
        c.q = dt * (std::exp(0.5 * z) - 1.0) / z;
        c.f1 = dt * (-4.0 - z + c.e1 * (4.0 - 3.0 * z + z * z)) / z3;
        c.f2 = dt * (2.0 + z + c.e1 * (-2.0 + z)) / z3;
        c.f3 = dt * (-4.0 - 3.0 * z - z * z + c.e1 * (4.0 - z)) / z3;
        return c;
    }
    const int m = 32;
    Complex q{}, f1{}, f2{}, f3{};
    for (int i = 0; i < m; ++i) {
        double th = 2.0 * kPi * (i + 0.5) / m;
        Complex zi = z + Complex{std::cos(th), std::sin(th)};
        Complex ez = std::exp(zi);
        Complex z3 = zi * zi * zi;
        q += (std::exp(0.5 * zi) - 1.0) / zi;
        f1 += (-4.0 - zi + ez * (4.0 - 3.0 * zi + zi * zi)) / z3;
        f2 += (2.0 + zi + ez * (-2.0 + zi)) / z3;
        f3 += (-4.0 - 3.0 * zi - zi * zi + ez * (4.0 - zi)) / z3;
    }
    c.q = dt * q.real() / m;
    c.f1 = dt * f1.real() / m;
    c.f2 = dt * f2.real() / m;
    c.f3 = dt * f3.real() / m;
    return c;
}

/// State integrator over the scalar amplitudes of the canonical half of the
/// mode set; the conjugate half is implied by reality, so both invariants
/// hold by construction at every step.
class Integrator {
public:
    Integrator(const SystemSpec& spec, double dt) : radius_out_(1) {
        std::vector<WaveVector> full;
        if (spec.kind == SystemSpec::Kind::compressed) {
            for (std::int64_t mu : spec.galerkin.mode_shells) {
                auto shell = shell_vectors(mu);
                full.insert(full.end(), shell.begin(), shell.end());
                radius_out_ = std::max(radius_out_, mu);
            }
        } else {
            radius_out_ = spec.radius_sq;
            std::int64_t half = std::int64_t(std::sqrt(double(spec.radius_sq))) + 1;
            for (std::int64_t k1 = -half; k1 <= half; ++k1)
                for (std::int64_t k2 = -half; k2 <= half; ++k2) {
                    WaveVector k{int(k1), int(k2)};
                    if (!k.is_zero() && k.norm_sq() <= spec.radius_sq) full.push_back(k);
                }
        }
        std::set<WaveVector> full_set(full.begin(), full.end());
        for (WaveVector k : full)
            if (is_canonical(k)) half_.push_back(k);
        std::sort(half_.begin(), half_.end(), [](WaveVector a, WaveVector b) {
            return std::tuple{a.norm_sq(), a.k1, a.k2} < std::tuple{b.norm_sq(), b.k1, b.k2};
        });
        for (std::size_t i = 0; i < half_.size(); ++i) half_index_[half_[i]] = int(i);

        ScalarAmplitudeField gs = spec.force().to_scalar();
        force_.resize(half_.size());
        etd_.resize(half_.size());
        for (std::size_t o = 0; o < half_.size(); ++o) {
            force_[o] = gs.amplitude(half_[o]);
            etd_[o] = make_etd(-dt * double(half_[o].norm_sq()), dt);
        }

        for (std::size_t o = 0; o < half_.size(); ++o) {
            WaveVector k = half_[o];
            for (WaveVector h : full) {
                WaveVector j = k - h;
                if (j.is_zero() || !full_set.count(j)) continue;
                double num = double(h.perp().dot(j)) * double(k.dot(j));
                if (num == 0.0) continue;
                double den = std::sqrt(double(h.norm_sq()) * double(k.norm_sq()) *
                                       double(j.norm_sq()));
                Triad t;
                t.out = int(o);
                t.ih = half_index_.at(canonical(h));
                t.ch = !is_canonical(h);
                t.ij = half_index_.at(canonical(j));
                t.cj = !is_canonical(j);
                t.coef = num / den;
                triads_.push_back(t);
            }
        }
        std::size_t n = half_.size();
        nu_.resize(n);
        na_.resize(n);
        nb_.resize(n);
        nc_.resize(n);
        wa_.resize(n);
        wb_.resize(n);
        wc_.resize(n);
    }

    std::vector<Complex> to_state(const SpectralField& u) const {
        ScalarAmplitudeField s = u.to_scalar();
        for (const auto& [k, a] : s.amplitudes())
            if (!half_index_.count(canonical(k)))
                throw SupportViolation("mode " + k.str() + " is outside the integrated mode set");
        std::vector<Complex> a(half_.size());
        for (std::size_t o = 0; o < half_.size(); ++o) a[o] = s.amplitude(half_[o]);
        return a;
    }

    SpectralField to_field(const std::vector<Complex>& a) const {
        std::vector<std::pair<WaveVector, Complex>> amps;
        amps.reserve(a.size());
        for (std::size_t o = 0; o < half_.size(); ++o)
            if (a[o] != Complex{}) amps.emplace_back(half_[o], a[o]);
        return SpectralField::from_scalar(ScalarAmplitudeField::make(amps), radius_out_);
    }

    void step(std::vector<Complex>& u) {
        std::size_t n = u.size();
        nonlinear(u, nu_);
        for (std::size_t o = 0; o < n; ++o) wa_[o] = etd_[o].e2 * u[o] + etd_[o].q * nu_[o];
        nonlinear(wa_, na_);
        for (std::size_t o = 0; o < n; ++o) wb_[o] = etd_[o].e2 * u[o] + etd_[o].q * na_[o];
        nonlinear(wb_, nb_);
        for (std::size_t o = 0; o < n; ++o)
            wc_[o] = etd_[o].e2 * wa_[o] + etd_[o].q * (2.0 * nb_[o] - nu_[o]);
        nonlinear(wc_, nc_);
        for (std::size_t o = 0; o < n; ++o)
            u[o] = etd_[o].e1 * u[o] + etd_[o].f1 * nu_[o] + 2.0 * etd_[o].f2 * (na_[o] + nb_[o]) +
                   etd_[o].f3 * nc_[o];
    }

    double norm(const std::vector<Complex>& a) const {
        double acc = 0.0;
        for (const Complex& c : a) acc += std::norm(c);
        return std::sqrt(2.0 * acc);
    }

    bool finite(const std::vector<Complex>& a) const {
        for (const Complex& c : a)
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
        return true;
    }

private:
    struct Triad {
        int out = 0, ih = 0, ij = 0;
        bool ch = false, cj = false;
        double coef = 0.0;
    };

    void nonlinear(const std::vector<Complex>& a, std::vector<Complex>& out) const {
        out = force_;
        for (const Triad& t : triads_) {
            Complex ah = t.ch ? std::conj(a[t.ih]) : a[t.ih];
            Complex aj = t.cj ? std::conj(a[t.ij]) : a[t.ij];
            out[t.out] += t.coef * ah * aj;
        }
    }

    std::int64_t radius_out_;
    std::vector<WaveVector> half_;
    std::map<WaveVector, int> half_index_;
    std::vector<Complex> force_;
    std::vector<EtdCoef> etd_;
    std::vector<Triad> triads_;
    std::vector<Complex> nu_, na_, nb_, nc_, wa_, wb_, wc_;
};

}  // namespace

GalerkinSpec GalerkinSpec::make(std::vector<std::int64_t> shells, SpectralField force,
                                std::int64_t lambda) {
    if (shells.empty()) throw ShellViolation("mode shell list is empty");
    std::sort(shells.begin(), shells.end());
    shells.erase(std::unique(shells.begin(), shells.end()), shells.end());
    for (std::int64_t mu : shells)
        if (mu < 1 || !in_stokes_spectrum(mu))
            throw ShellViolation("shell " + std::to_string(mu) +
                                 " carries no lattice vectors");
    if (!std::binary_search(shells.begin(), shells.end(), lambda))
        throw ShellViolation("forcing shell " + std::to_string(lambda) +
                             " is not among the mode shells");
    if (force.size() == 0) throw SupportViolation("force field is empty");
    for (const auto& [k, c] : force.modes()) {
        (void)c;
        if (k.norm_sq() != lambda)
            throw SupportViolation("force mode " + k.str() + " is off the shell |k|^2 = " +
                                   std::to_string(lambda));
    }
    GalerkinSpec s;
    s.mode_shells = std::move(shells);
    s.force = std::move(force);
    s.lambda = lambda;
    return s;
}

bool GalerkinSpec::contains_shell(std::int64_t mu) const {
    return std::binary_search(mode_shells.begin(), mode_shells.end(), mu);
}

SystemSpec SystemSpec::compressed(GalerkinSpec spec) {
    SystemSpec s;
    s.kind = Kind::compressed;
    s.galerkin = std::move(spec);
    return s;
}

SystemSpec SystemSpec::ball(std::int64_t radius_sq, SpectralField force, std::int64_t lambda) {
    if (radius_sq < 1) throw TruncationViolation("ball radius must allow |k|^2 >= 1");
    for (const auto& [k, c] : force.modes()) {
        (void)c;
        if (k.norm_sq() > radius_sq)
            throw SupportViolation("force mode " + k.str() + " outside the ball");
    }
    SystemSpec s;
    s.kind = Kind::ball;
    s.radius_sq = radius_sq;
    s.galerkin.force = std::move(force);
    s.galerkin.lambda = lambda;
    return s;
}

SpectralField rhs_full(const SpectralField& u, const SpectralField& g) {
    return g - apply_stokes_power(u, 1.0) - bilinear(u, u, u.radius_sq());
}

SpectralField rhs_compressed(const SpectralField& u, const GalerkinSpec& spec) {
    for (const auto& [k, c] : u.modes()) {
        (void)c;
        if (!spec.contains_shell(k.norm_sq()))
            throw SupportViolation("state mode " + k.str() + " is outside the active shells");
    }
    SpectralField b = bilinear(u, u, spec.max_shell());
    SpectralField projected = SpectralField::zero(spec.max_shell());
    for (std::int64_t mu : spec.mode_shells) projected = projected + eigenspace_project(b, mu);
    return spec.force - apply_stokes_power(u, 1.0) - projected;
}

SpectralField rhs(const SpectralField& u, const SystemSpec& spec) {
    if (spec.kind == SystemSpec::Kind::compressed) return rhs_compressed(u, spec.galerkin);
    for (const auto& [k, c] : u.modes()) {
        (void)c;
        if (k.norm_sq() > spec.radius_sq)
            throw SupportViolation("state mode " + k.str() + " is outside the ball");
    }
    return spec.force() - apply_stokes_power(u, 1.0) - bilinear(u, u, spec.radius_sq);
}

SpectralField step_etdrk4(const SpectralField& u, const SystemSpec& spec, double dt) {
    if (!(dt > 0.0)) throw DomainError("step size must be positive");
    Integrator integ(spec, dt);
    std::vector<Complex> state = integ.to_state(u);
    integ.step(state);
    return integ.to_field(state);
}

Trajectory integrate(const SpectralField& u0, const SystemSpec& spec, double T, double dt,
                     int sample_every) {
    if (!(T > 0.0) || !(dt > 0.0)) throw DomainError("integration requires T > 0 and dt > 0");
    if (sample_every < 1) throw DomainError("sample stride must be >= 1");
    long long n_steps = std::llround(T / dt);
    if (n_steps < 1) n_steps = 1;

    Integrator integ(spec, dt);
    std::vector<Complex> state = integ.to_state(u0);
    double guard = 1e3 * std::max({norm_as(spec.force(), 0.0), integ.norm(state), 1e-30});

    Trajectory traj;
    auto sample = [&](long long step) {
        if (!integ.finite(state)) throw NonFinite("non-finite coefficient at t = " +
                                                  std::to_string(double(step) * dt));
        if (integ.norm(state) > guard)
            throw NonFinite("blow-up guard tripped at t = " + std::to_string(double(step) * dt));
        SpectralField u = integ.to_field(state);
        traj.times.push_back(double(step) * dt);
        traj.derivatives.push_back(rhs(u, spec));
        traj.states.push_back(std::move(u));
    };

    sample(0);
    for (long long step = 1; step <= n_steps; ++step) {
        integ.step(state);
        if (step % sample_every == 0 || step == n_steps) sample(step);
    }
    return traj;
}

const char* ghost_verdict_name(GhostVerdict v) {
    switch (v) {
        case GhostVerdict::candidate_chained_ghost: return "CandidateChainedGhost";
        case GhostVerdict::not_ghost: return "NotGhost";
        case GhostVerdict::converged_to_steady_state: return "ConvergedToSteadyState";
    }
    return "unknown";
}

GhostCheckReport ghost_check_evaluate(const Trajectory& traj, const SpectralField& g,
                                      std::int64_t lambda, double eps_eta, double eps_chained) {
    if (traj.size() == 0) throw DomainError("empty trajectory");
    if (!(eps_eta > 0.0) || !(eps_chained > 0.0))
        throw DomainError("ghost-check thresholds must be positive");
    double gsq = inner(g, g);
    if (gsq <= 0.0) throw DomainError("zero force");

    GhostCheckReport rep;
    rep.samples.resize(traj.size());
    std::vector<double> eta(traj.size());
    const double nan = std::numeric_limits<double>::quiet_NaN();

    for (std::size_t i = 0; i < traj.size(); ++i) {
        const SpectralField& u = traj.states[i];
        const SpectralField& udot = traj.derivatives[i];
        GhostCheckSample& s = rep.samples[i];
        s.t = traj.times[i];
        GhostDiagnostics d = diagnostics(u, udot, g, lambda);
        s.eta = d.E / gsq;
        eta[i] = s.eta;
        s.udot_norm = std::sqrt(d.udot_sq);
        s.set_condition = d.e > 1e-300 ? (double(lambda) * d.e - d.E) * (d.E / d.e) : nan;
        if (s.udot_norm < eps_eta) {
            // Near-stationary sample: the chained coefficients are singular
            // at u*, and convergence is decided by |du/dt| alone.
            s.chained_residual = nan;
            s.chained_evaluated = false;
            continue;
        }
        ChainedCoefficients cc;
        try {
            cc = chained_coefficients(d);
        } catch (const DegenerateDiagnostics&) {
            // Denominator collapse means the sample sits on the singular
            // surface around u*; skip it like a near-stationary sample so a
            // converging run still reaches a verdict.
            s.chained_residual = nan;
            s.chained_evaluated = false;
            continue;
        } catch (const DomainError&) {
            // The sample satisfies the ghost relations numerically but not
            // the chained sign pattern; it is not a chained candidate.
            s.chained_residual = nan;
            s.chained_evaluated = false;
            continue;
        }
        SpectralField defect = apply_stokes_power(u, 2.0) - g * cc.gamma - u * cc.beta -
                               apply_stokes_power(u, 1.0) * cc.alpha;
        s.chained_residual = norm_as(defect, 0.0);
        s.chained_evaluated = true;
    }

    std::vector<double> etap = d_dt(traj.times, eta);
    rep.eta_derivative_max = 0.0;
    rep.chained_residual_max = nan;
    bool any_chained = false;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        rep.samples[i].eta_prime = etap[i];
        rep.eta_derivative_max = std::max(rep.eta_derivative_max, std::abs(etap[i]));
        if (rep.samples[i].chained_evaluated) {
            if (!any_chained) {
                rep.chained_residual_max = rep.samples[i].chained_residual;
                any_chained = true;
            } else {
                rep.chained_residual_max =
                    std::max(rep.chained_residual_max, rep.samples[i].chained_residual);
            }
        }
    }
    rep.udot_final = rep.samples.back().udot_norm;

    if (rep.udot_final < eps_eta) {
        rep.verdict = GhostVerdict::converged_to_steady_state;
    } else if (rep.eta_derivative_max < eps_eta && any_chained &&
               rep.chained_residual_max < eps_chained) {
        rep.verdict = GhostVerdict::candidate_chained_ghost;
    } else {
        rep.verdict = GhostVerdict::not_ghost;
    }
    return rep;
}

GhostCheckReport ghost_check(const SpectralField& u0, const GalerkinSpec& spec, double T,
                             double dt, int sample_every, double eps_eta, double eps_chained) {
    // Integrate from the shell projection of u0.
    std::vector<std::pair<WaveVector, ModeCoeff>> kept;
    for (const auto& [k, c] : u0.modes())
        if (spec.contains_shell(k.norm_sq())) kept.emplace_back(k, c);
    SpectralField projected = SpectralField::make(kept, spec.max_shell());
    Trajectory traj = integrate(projected, SystemSpec::compressed(spec), T, dt, sample_every);
    return ghost_check_evaluate(traj, spec.force, spec.lambda, eps_eta, eps_chained);
}

std::vector<BalanceResidual> balance_residuals(const Trajectory& traj, const SpectralField& g,
                                               std::int64_t lambda) {
    std::size_t n = traj.size();
    std::vector<double> e(n), E(n), P(n), gu(n);
    for (std::size_t i = 0; i < n; ++i) {
        const SpectralField& u = traj.states[i];
        e[i] = inner(u, u);
        double En = norm_as(u, 0.5);
        E[i] = En * En;
        double Pn = norm_as(u, 1.0);
        P[i] = Pn * Pn;
        gu[i] = inner(g, u);
    }
    std::vector<double> de = d_dt(traj.times, e);
    std::vector<double> dE = d_dt(traj.times, E);
    std::vector<BalanceResidual> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i].t = traj.times[i];
        out[i].energy = 0.5 * de[i] + E[i] - gu[i];
        out[i].enstrophy = 0.5 * dE[i] + P[i] - double(lambda) * gu[i];
    }
    return out;
}

double StructureResiduals::max_abs() const {
    return std::max({std::abs(orth_force), std::abs(orth_stokes), std::abs(orth_state),
                     std::abs(norm_balance), std::abs(transfer_direct), std::abs(transfer_gap),
                     std::abs(shift_minus), std::abs(shift_plus), std::abs(coupling)});
}

StructureResiduals structure_residuals(const SpectralField& u, const SpectralField& udot,
                                       const SpectralField& g, std::int64_t lambda) {
    (void)lambda;
    SpectralField au = apply_stokes_power(u, 1.0);
    SpectralField b = g - au - udot;
    double gsq = inner(g, g);
    double p = inner(au, au);
    double udot_sq = inner(udot, udot);
    double b_sq = inner(b, b);

    StructureResiduals r;
    r.orth_force = inner(udot, g);
    r.orth_stokes = inner(udot, au);
    r.orth_state = inner(udot, u);
    r.norm_balance = b_sq + p - udot_sq - gsq;
    r.transfer_direct = inner(b, g) - (b_sq - udot_sq);
    r.transfer_gap = inner(b, g) - (gsq - p);
    SpectralField half_g = g * 0.5;
    double shifted_b = inner(b - half_g, b - half_g);
    r.shift_minus = shifted_b - inner(udot - half_g, udot - half_g);
    r.shift_plus = shifted_b - inner(udot + half_g, udot + half_g);
    r.coupling = inner(b, udot) + udot_sq;
    return r;
}

ExtensionCheck extension_property_check(const Trajectory& traj, const GalerkinSpec& spec,
                                        double tol_leak, double tol_drift) {
    if (traj.size() == 0) throw DomainError("empty trajectory");
    ExtensionCheck chk;
    double e0 = 0.0, E0 = 0.0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const SpectralField& u = traj.states[i];
        SpectralField b = bilinear(u, u);
        SpectralField projected = SpectralField::zero(b.radius_sq());
        for (std::int64_t mu : spec.mode_shells) projected = projected + eigenspace_project(b, mu);
        chk.leak_max = std::max(chk.leak_max, norm_as(b - projected, 0.0));
        double e = inner(u, u);
        double En = norm_as(u, 0.5);
        double E = En * En;
        if (i == 0) {
            e0 = e;
            E0 = E;
        } else {
            chk.e_drift = std::max(chk.e_drift, std::abs(e - e0));
            chk.E_drift = std::max(chk.E_drift, std::abs(E - E0));
        }
    }
    chk.hypothesis_holds = chk.leak_max <= tol_leak;
    chk.extension_holds = chk.hypothesis_holds && chk.e_drift <= tol_drift &&
                          chk.E_drift <= tol_drift;
    return chk;
}

}  // namespace ghostlab
