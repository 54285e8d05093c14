#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "voxal/loop.hpp"
#include "voxal/network.hpp"
#include "voxal/phantom.hpp"

namespace voxal {

// Harness configuration. Desk-scale defaults: a full four-strategy
// comparison finishes on a laptop CPU.
struct RunConfig {
    // phantom defaults (gen-data)
    Task task = Task::brain;
    Dims volume_size{32, 32, 32};
    int n_train = 8;
    int n_test = 4;
    double noise_sigma = 0.05;

    // network
    ArchConfig arch;  // base_channels 8, depth 1, cam_reduction 2, attention on

    // optimizer + loop
    LoopConfig loop;          // desk default overrides applied in ctor
    int full_train_iters = 600;  // --full runs train once, for this many iterations

    // harness
    std::vector<std::string> strategies{"attention", "random", "interval", "uncertainty"};
    std::string output_dir = "runs";
    std::uint64_t master_seed = 1;

    RunConfig() {
        loop.train_iters = 150;  // config-raisable toward the reference 500
    }

    void validate() const;
};

// Strict key = value parsing: unknown keys and malformed values are
// field-level errors. Missing keys keep their defaults.
RunConfig parse_run_config(const std::filesystem::path& path);
RunConfig parse_run_config_text(const std::string& text, const std::string& origin);

// Round-trips through parse_run_config_text; used to echo the resolved
// configuration into run directories.
std::string format_run_config(const RunConfig& cfg);

}  // namespace voxal
