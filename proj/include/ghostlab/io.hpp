#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ghostlab/spectral.hpp"

namespace ghostlab {

/// 17-significant-digit scientific notation ("%.16e"), locale independent.
/// One fixed width for every finite value keeps exports byte-stable.
std::string format_float(double x);

std::string format_int(std::int64_t v);

/// Whole-file helpers; every failure surfaces as IoError naming the path.
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);
void ensure_directory(const std::string& path);

/// Field serialization through the scalar amplitudes: a `radius_sq` line
/// followed by one `k1 k2 re im` line per canonical half-mode (conjugate
/// partners are implied by reality).
std::string field_to_text(const SpectralField& u);
SpectralField field_from_text(const std::string& text);
void save_field(const SpectralField& u, const std::string& path);
SpectralField load_field(const std::string& path);

/// Run configuration: one structured text file, `key value...` lines with
/// `#` comments.  Unknown keys are rejected so typos cannot silently fall
/// back to defaults; `present` records which keys the file actually set.
struct RunConfig {
    double lambda = 2.0;
    double G = 1.0;
    std::vector<std::int64_t> shells = {1, 2, 5};
    /// Scalar amplitudes of the forcing pattern on shell lambda
    /// (`force_pattern k1 k2 re im`, repeatable); empty selects the
    /// constant default pattern.
    std::vector<std::pair<WaveVector, Complex>> force_pattern;
    /// Inline initial state (`u0 k1 k2 re im`, repeatable); empty selects
    /// the seeded perturbation of the stationary state.
    std::vector<std::pair<WaveVector, Complex>> u0;
    double u0_scale = 0.05;
    double dt = 1e-3;
    double T = 100.0;
    int sample_every = 10;
    double eps_eta = 0.0;  // unset: resolved to 1e-6 G^2
    double eps_chained = 1e-3;
    double c_bg = 1.0;
    std::vector<std::int64_t> mu_plus = {4, 5, 25, 81};
    int e_grid_n = 201;
    std::string mode = "galerkin";  // "galerkin" | "ball"
    std::int64_t radius_sq = 25;
    int ensemble = 1;
    bool hold_state = false;
    int samples = 1000;

    std::set<std::string> present;

    bool has(const std::string& key) const { return present.count(key) != 0; }
    double resolved_eps_eta() const { return has("eps_eta") ? eps_eta : 1e-6 * G * G; }
};

RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::string& path);

/// Delimited-text table with a one-line header; rows are preformatted cells.
class TableWriter {
public:
    explicit TableWriter(const std::vector<std::string>& columns);

    void row(const std::vector<std::string>& cells);
    const std::string& str() const { return out_; }

private:
    std::size_t columns_;
    std::string out_;
};

}  // namespace ghostlab
