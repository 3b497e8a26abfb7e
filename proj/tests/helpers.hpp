#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "ghostlab/spectral.hpp"

namespace testutil {

inline double rel_err(double got, double want) {
    double scale = std::max(std::abs(got), std::abs(want));
    if (scale == 0.0) return 0.0;
    return std::abs(got - want) / scale;
}

/// Field from scalar amplitudes; conjugate partners implied.
inline ghostlab::SpectralField from_amps(
    const std::vector<std::pair<ghostlab::WaveVector, ghostlab::Complex>>& amps,
    std::int64_t radius_sq) {
    return ghostlab::SpectralField::from_scalar(ghostlab::ScalarAmplitudeField::make(amps),
                                                radius_sq);
}

/// Fresh scratch directory under the system temp root.
inline std::string temp_dir(const std::string& tag) {
    namespace fs = std::filesystem;
    fs::path p = fs::temp_directory_path() / ("ghostlab_test_" + tag);
    fs::remove_all(p);
    fs::create_directories(p);
    return p.string();
}

}  // namespace testutil
