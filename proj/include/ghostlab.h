/* C interface to the ghostlab shared library.
 *
 * Every function returns a ghl_status; GHL_OK means success.  On failure the
 * thread-local message from ghl_error_message() describes the cause.  Objects
 * behind opaque handles are owned by the caller and released with the
 * matching *_free function.
 */
#ifndef GHOSTLAB_H
#define GHOSTLAB_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ghl_status {
    GHL_OK = 0,
    GHL_INVALID_ARGUMENT = 1,
    GHL_REALITY_VIOLATION = 2,
    GHL_DIVERGENCE_VIOLATION = 3,
    GHL_TRUNCATION_VIOLATION = 4,
    GHL_NOT_AN_EIGENVALUE = 5,
    GHL_SHELL_VIOLATION = 6,
    GHL_SUPPORT_VIOLATION = 7,
    GHL_NONFINITE = 8,
    GHL_DEGENERATE_DIAGNOSTICS = 9,
    GHL_FRAME_DEGENERATE = 10,
    GHL_NOT_POSITIVE_DEFINITE = 11,
    GHL_DEGENERATE_COORDINATES = 12,
    GHL_SINGULAR_GRAM = 13,
    GHL_DECOMPOSITION_RESIDUAL = 14,
    GHL_DOMAIN_ERROR = 15,
    GHL_NO_ADMISSIBLE_BRANCH = 16,
    GHL_GENERATION_MISMATCH = 17,
    GHL_PROPAGATION_STALL = 18,
    GHL_CONFIG_ERROR = 19,
    GHL_IO_ERROR = 20,
    GHL_UNKNOWN = 99
} ghl_status;

/* Message describing the most recent failure on the calling thread. */
const char* ghl_error_message(void);

/* ---------------------------------------------------------------- fields */

/* Divergence-free velocity field truncated to |k|^2 <= radius_sq,
 * represented by scalar amplitudes: u_hat(k) = i alpha(k) k_perp / |k|. */
typedef struct ghl_field ghl_field;

/* Build a field from n scalar amplitudes alpha(k); conjugate partners may be
 * omitted and are filled in by reality. */
ghl_status ghl_field_from_amplitudes(const int32_t* k1, const int32_t* k2, const double* re,
                                     const double* im, size_t n, int64_t radius_sq,
                                     ghl_field** out);
void ghl_field_free(ghl_field* f);
ghl_status ghl_field_clone(const ghl_field* f, ghl_field** out);

int64_t ghl_field_radius_sq(const ghl_field* f);
/* Number of canonical half-modes (k1 > 0, or k1 = 0 and k2 > 0). */
size_t ghl_field_mode_count(const ghl_field* f);
/* Enumerate canonical half-modes into caller arrays of capacity cap. */
ghl_status ghl_field_modes(const ghl_field* f, int32_t* k1, int32_t* k2, double* re, double* im,
                           size_t cap, size_t* written);
/* Scalar amplitude of one mode (zero when the mode is absent). */
ghl_status ghl_field_amplitude(const ghl_field* f, int32_t k1, int32_t k2, double* re,
                               double* im);

/* |A^s f| (s = 0 gives the plain norm). */
ghl_status ghl_field_norm(const ghl_field* f, double s, double* out);
ghl_status ghl_field_inner(const ghl_field* a, const ghl_field* b, double* out);
ghl_status ghl_field_stokes(const ghl_field* f, double s, ghl_field** out);
/* Advection term B(u, v), truncated to |k|^2 <= out_radius_sq. */
ghl_status ghl_field_bilinear(const ghl_field* u, const ghl_field* v, int64_t out_radius_sq,
                              ghl_field** out);
/* Restriction to the eigenspace |k|^2 = mu. */
ghl_status ghl_field_shell_project(const ghl_field* f, int64_t mu, ghl_field** out);

ghl_status ghl_field_save(const ghl_field* f, const char* path);
ghl_status ghl_field_load(const char* path, ghl_field** out);

/* Default-pattern eigenforce on shell lambda with |g| = magnitude. */
ghl_status ghl_eigenforce(int64_t lambda, double magnitude, ghl_field** out);

/* ----------------------------------------------------------- diagnostics */

typedef struct ghl_diagnostics {
    double e;       /* |u|^2 */
    double E;       /* |A^(1/2) u|^2 */
    double P;       /* |A u|^2 */
    double G;       /* |g| */
    double A32_sq;  /* |A^(3/2) u|^2 */
    double udot_sq; /* |du/dt|^2 */
    double gu;      /* (g, u) */
    int64_t lambda;
} ghl_diagnostics;

ghl_status ghl_compute_diagnostics(const ghl_field* u, const ghl_field* udot, const ghl_field* g,
                                   int64_t lambda, ghl_diagnostics* out);

/* Coefficients of the chained relation A^2 u = gamma g + beta u + alpha Au. */
typedef struct ghl_chained {
    double gamma;
    double beta;
    double alpha;
    double discriminant;
    double mu_plus;  /* NaN when the discriminant is negative */
    double mu_minus;
    double eta; /* E / G^2 */
} ghl_chained;

ghl_status ghl_chained_coefficients(const ghl_diagnostics* d, ghl_chained* out);

/* Lower branch of the chained-candidate parabola at lambda = 2. */
ghl_status ghl_parabola_point(double mu_plus, double G, double e, double* E_out, int* interior,
                              int* boundary);

/* In-memory nonexistence verdict (1 when every mechanical check passes). */
ghl_status ghl_verify_nonexistence(int* nonexistent);

/* -------------------------------------------------------------- commands */

/* Each command loads its config file, runs, writes its exports under
 * out_dir, and reports the process exit code (0 success, 2 config, 3
 * numeric failure, 4 verification failure) plus a one-line summary copied
 * into message (truncated to message_cap - 1 characters). */
ghl_status ghl_cmd_simulate(const char* config_path, const char* out_dir, uint64_t seed,
                            int* exit_code, char* message, size_t message_cap);
ghl_status ghl_cmd_ghost_check(const char* config_path, const char* out_dir, uint64_t seed,
                               int jobs, int* exit_code, char* message, size_t message_cap);
ghl_status ghl_cmd_curves(const char* config_path, const char* out_dir, int* exit_code,
                          char* message, size_t message_cap);
ghl_status ghl_cmd_verify_nonexistence(const char* out_dir, int* exit_code, char* message,
                                       size_t message_cap);
ghl_status ghl_cmd_identities(const char* config_path, const char* out_dir, uint64_t seed,
                              int* exit_code, char* message, size_t message_cap);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* GHOSTLAB_H */
