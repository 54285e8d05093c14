#pragma once

#include <cstdint>
#include <string>

#include "voxal/network.hpp"

namespace voxal {

struct GradCheckReport {
    double max_rel_error = 0.0;
    std::size_t num_checked = 0;
    std::size_t num_params = 0;
    std::string worst_param;
};

// Central-difference check of the full analytic gradient in double precision.
// Samples at least `min_samples` parameters spread over every parameter
// array (so every layer type, both attention paths and the recalibration
// product are covered). Relative error is |ga - gn| / max(|ga|, |gn|, 1e-8).
// Deterministic in (arch, dims, seed).
GradCheckReport gradient_check(const ArchConfig& arch, Dims dims, std::uint64_t seed,
                               int min_samples = 200, double epsilon = 1e-4);

}  // namespace voxal
