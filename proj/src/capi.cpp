#include "ghostlab.h"

#include <cstring>
#include <string>

#include "ghostlab/commands.hpp"
#include "ghostlab/geometry.hpp"
#include "ghostlab/io.hpp"

struct ghl_field {
    ghostlab::SpectralField v;
};

namespace {

thread_local std::string t_error;

ghl_status to_status(ghostlab::errc c) {
    int code = int(c);
    if (code < 1 || code > int(ghostlab::errc::io_error)) return GHL_UNKNOWN;
    return ghl_status(code);
}

template <typename F>
ghl_status wrap(F&& f) {
    try {
        t_error.clear();
        f();
        return GHL_OK;
    } catch (const ghostlab::Error& e) {
        t_error = e.what();
        return to_status(e.code());
    } catch (const std::exception& e) {
        t_error = e.what();
        return GHL_UNKNOWN;
    }
}

ghl_status invalid(const char* what) {
    t_error = std::string("invalid argument: ") + what;
    return GHL_INVALID_ARGUMENT;
}

void copy_message(const std::string& src, char* dst, size_t cap) {
    if (!dst || cap == 0) return;
    size_t n = std::min(src.size(), cap - 1);
    std::memcpy(dst, src.data(), n);
    dst[n] = '\0';
}

/// Canonical half-mode amplitudes of a field, in map order.
std::vector<std::pair<ghostlab::WaveVector, ghostlab::Complex>> half_modes(
    const ghostlab::SpectralField& u) {
    std::vector<std::pair<ghostlab::WaveVector, ghostlab::Complex>> out;
    ghostlab::ScalarAmplitudeField scalar = u.to_scalar();
    for (const auto& [k, a] : scalar.amplitudes())
        if (k.k1 > 0 || (k.k1 == 0 && k.k2 > 0)) out.emplace_back(k, a);
    return out;
}

template <typename Cmd>
ghl_status run_command(Cmd&& cmd, int* exit_code, char* message, size_t message_cap) {
    if (!exit_code) return invalid("exit_code is null");
    return wrap([&] {
        ghostlab::CommandResult r = cmd();
        *exit_code = r.exit_code;
        copy_message(r.message, message, message_cap);
    });
}

}  // namespace

extern "C" {

const char* ghl_error_message(void) { return t_error.c_str(); }

ghl_status ghl_field_from_amplitudes(const int32_t* k1, const int32_t* k2, const double* re,
                                     const double* im, size_t n, int64_t radius_sq,
                                     ghl_field** out) {
    if (!out || (n > 0 && (!k1 || !k2 || !re || !im))) return invalid("null array");
    return wrap([&] {
        std::vector<std::pair<ghostlab::WaveVector, ghostlab::Complex>> amps;
        amps.reserve(n);
        for (size_t i = 0; i < n; ++i)
            amps.emplace_back(ghostlab::WaveVector{int(k1[i]), int(k2[i])},
                              ghostlab::Complex(re[i], im[i]));
        *out = new ghl_field{ghostlab::SpectralField::from_scalar(
            ghostlab::ScalarAmplitudeField::make(amps), radius_sq)};
    });
}

void ghl_field_free(ghl_field* f) { delete f; }

ghl_status ghl_field_clone(const ghl_field* f, ghl_field** out) {
    if (!f || !out) return invalid("null field");
    return wrap([&] { *out = new ghl_field{f->v}; });
}

int64_t ghl_field_radius_sq(const ghl_field* f) { return f ? f->v.radius_sq() : -1; }

size_t ghl_field_mode_count(const ghl_field* f) {
    if (!f) return 0;
    return half_modes(f->v).size();
}

ghl_status ghl_field_modes(const ghl_field* f, int32_t* k1, int32_t* k2, double* re, double* im,
                           size_t cap, size_t* written) {
    if (!f || !k1 || !k2 || !re || !im || !written) return invalid("null argument");
    return wrap([&] {
        auto modes = half_modes(f->v);
        if (modes.size() > cap) throw ghostlab::IoError("mode buffer too small");
        for (size_t i = 0; i < modes.size(); ++i) {
            k1[i] = modes[i].first.k1;
            k2[i] = modes[i].first.k2;
            re[i] = modes[i].second.real();
            im[i] = modes[i].second.imag();
        }
        *written = modes.size();
    });
}

ghl_status ghl_field_amplitude(const ghl_field* f, int32_t k1, int32_t k2, double* re,
                               double* im) {
    if (!f || !re || !im) return invalid("null argument");
    return wrap([&] {
        ghostlab::Complex a = f->v.to_scalar().amplitude({int(k1), int(k2)});
        *re = a.real();
        *im = a.imag();
    });
}

ghl_status ghl_field_norm(const ghl_field* f, double s, double* out) {
    if (!f || !out) return invalid("null argument");
    return wrap([&] { *out = ghostlab::norm_as(f->v, s); });
}

ghl_status ghl_field_inner(const ghl_field* a, const ghl_field* b, double* out) {
    if (!a || !b || !out) return invalid("null argument");
    return wrap([&] { *out = ghostlab::inner(a->v, b->v); });
}

ghl_status ghl_field_stokes(const ghl_field* f, double s, ghl_field** out) {
    if (!f || !out) return invalid("null argument");
    return wrap([&] { *out = new ghl_field{ghostlab::apply_stokes_power(f->v, s)}; });
}

ghl_status ghl_field_bilinear(const ghl_field* u, const ghl_field* v, int64_t out_radius_sq,
                              ghl_field** out) {
    if (!u || !v || !out) return invalid("null argument");
    return wrap([&] { *out = new ghl_field{ghostlab::bilinear(u->v, v->v, out_radius_sq)}; });
}

ghl_status ghl_field_shell_project(const ghl_field* f, int64_t mu, ghl_field** out) {
    if (!f || !out) return invalid("null argument");
    return wrap([&] { *out = new ghl_field{ghostlab::eigenspace_project(f->v, mu)}; });
}

ghl_status ghl_field_save(const ghl_field* f, const char* path) {
    if (!f || !path) return invalid("null argument");
    return wrap([&] { ghostlab::save_field(f->v, path); });
}

ghl_status ghl_field_load(const char* path, ghl_field** out) {
    if (!path || !out) return invalid("null argument");
    return wrap([&] { *out = new ghl_field{ghostlab::load_field(path)}; });
}

ghl_status ghl_eigenforce(int64_t lambda, double magnitude, ghl_field** out) {
    if (!out) return invalid("null argument");
    return wrap([&] {
        ghostlab::EigenforceSpec spec;
        spec.lambda = lambda;
        spec.magnitude = magnitude;
        *out = new ghl_field{ghostlab::make_eigenforce(spec)};
    });
}

ghl_status ghl_compute_diagnostics(const ghl_field* u, const ghl_field* udot, const ghl_field* g,
                                   int64_t lambda, ghl_diagnostics* out) {
    if (!u || !udot || !g || !out) return invalid("null argument");
    return wrap([&] {
        ghostlab::GhostDiagnostics d = ghostlab::diagnostics(u->v, udot->v, g->v, lambda);
        *out = {d.e, d.E, d.P, d.G, d.A32_sq, d.udot_sq, d.gu, d.lambda};
    });
}

ghl_status ghl_chained_coefficients(const ghl_diagnostics* d, ghl_chained* out) {
    if (!d || !out) return invalid("null argument");
    return wrap([&] {
        ghostlab::GhostDiagnostics gd;
        gd.e = d->e;
        gd.E = d->E;
        gd.P = d->P;
        gd.G = d->G;
        gd.A32_sq = d->A32_sq;
        gd.udot_sq = d->udot_sq;
        gd.gu = d->gu;
        gd.lambda = d->lambda;
        ghostlab::ChainedCoefficients cc = ghostlab::chained_coefficients(gd);
        *out = {cc.gamma, cc.beta, cc.alpha, cc.discriminant, cc.mu_plus, cc.mu_minus, cc.eta};
    });
}

ghl_status ghl_parabola_point(double mu_plus, double G, double e, double* E_out, int* interior,
                              int* boundary) {
    if (!E_out || !interior || !boundary) return invalid("null argument");
    return wrap([&] {
        std::vector<ghostlab::ParabolaPoint> pts = ghostlab::parabola_curve(mu_plus, G, {e});
        *E_out = pts[0].E;
        *interior = pts[0].interior ? 1 : 0;
        *boundary = pts[0].boundary ? 1 : 0;
    });
}

ghl_status ghl_verify_nonexistence(int* nonexistent) {
    if (!nonexistent) return invalid("null argument");
    return wrap([&] { *nonexistent = ghostlab::nonexistence_report().nonexistent ? 1 : 0; });
}

ghl_status ghl_cmd_simulate(const char* config_path, const char* out_dir, uint64_t seed,
                            int* exit_code, char* message, size_t message_cap) {
    if (!config_path || !out_dir) return invalid("null path");
    return run_command(
        [&] {
            try {
                return ghostlab::cmd_simulate(ghostlab::load_run_config(config_path), out_dir,
                                              seed);
            } catch (const ghostlab::Error& e) {
                return ghostlab::CommandResult{ghostlab::exit_code_for(e), e.what()};
            }
        },
        exit_code, message, message_cap);
}

ghl_status ghl_cmd_ghost_check(const char* config_path, const char* out_dir, uint64_t seed,
                               int jobs, int* exit_code, char* message, size_t message_cap) {
    if (!config_path || !out_dir) return invalid("null path");
    return run_command(
        [&] {
            try {
                return ghostlab::cmd_ghost_check(ghostlab::load_run_config(config_path), out_dir,
                                                 seed, jobs);
            } catch (const ghostlab::Error& e) {
                return ghostlab::CommandResult{ghostlab::exit_code_for(e), e.what()};
            }
        },
        exit_code, message, message_cap);
}

ghl_status ghl_cmd_curves(const char* config_path, const char* out_dir, int* exit_code,
                          char* message, size_t message_cap) {
    if (!config_path || !out_dir) return invalid("null path");
    return run_command(
        [&] {
            try {
                return ghostlab::cmd_curves(ghostlab::load_run_config(config_path), out_dir);
            } catch (const ghostlab::Error& e) {
                return ghostlab::CommandResult{ghostlab::exit_code_for(e), e.what()};
            }
        },
        exit_code, message, message_cap);
}

ghl_status ghl_cmd_verify_nonexistence(const char* out_dir, int* exit_code, char* message,
                                       size_t message_cap) {
    if (!out_dir) return invalid("null path");
    return run_command([&] { return ghostlab::cmd_verify_nonexistence(out_dir); }, exit_code,
                       message, message_cap);
}

ghl_status ghl_cmd_identities(const char* config_path, const char* out_dir, uint64_t seed,
                              int* exit_code, char* message, size_t message_cap) {
    if (!config_path || !out_dir) return invalid("null path");
    return run_command(
        [&] {
            try {
                return ghostlab::cmd_identities(ghostlab::load_run_config(config_path), out_dir,
                                                seed);
            } catch (const ghostlab::Error& e) {
                return ghostlab::CommandResult{ghostlab::exit_code_for(e), e.what()};
            }
        },
        exit_code, message, message_cap);
}

}  // extern "C"
