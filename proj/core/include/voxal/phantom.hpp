#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "voxal/volume.hpp"

namespace voxal {

enum class Task { brain, tissue };

int task_classes(Task task);
std::string task_name(Task task);
Task parse_task(const std::string& name);

// Synthetic segmentation target: nested randomized ellipsoids with per-class
// intensity means plus Gaussian noise. Brain task: background (0) and one
// ellipsoid (1). Tissue task: outer shell (1), inner shell (2), and a small
// off-center ventricle blob (3) inside the inner shell.
struct PhantomSpec {
    Task task = Task::brain;
    Dims size{32, 32, 32};
    int num_classes = 2;
    double noise_sigma = 0.05;
    std::uint64_t seed = 0;

    // Throws std::invalid_argument on violated invariants.
    void validate() const;
};

// Per-class intensity means; chosen separable but overlapping under the
// default noise so segmentation stays nontrivial.
inline constexpr double kClassIntensity[4] = {0.1, 0.6, 0.8, 0.35};

// Deterministic in spec.seed, bit for bit.
std::pair<Volume, LabelVolume> generate_phantom(const PhantomSpec& spec);

}  // namespace voxal
