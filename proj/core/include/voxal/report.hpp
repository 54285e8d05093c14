#pragma once

#include <filesystem>
#include <vector>

#include "voxal/run_store.hpp"

namespace voxal {

struct StrategyCell {
    std::string strategy;
    double ratio = 0.0;
    int seeds = 0;
    double part_a_mean = 0.0, part_a_std = 0.0;
    double part_b_mean = 0.0, part_b_std = 0.0;
};

struct AblationCell {
    bool attention = false;
    int seeds = 0;
    double part_a_mean = 0.0;
    double part_b_mean = 0.0;
};

struct Report {
    std::vector<StrategyCell> strategy_table;  // AL arms, one row per (strategy, ratio)
    std::vector<AblationCell> ablation_table;  // full-supervision arms by attention flag
    bool has_full_reference = false;
    double full_part_b_mean = 0.0;  // attention-model full supervision, Part B
};

// Aggregates completed runs; seed means with sample std (0 when a cell holds
// one seed). Rejects runs that disagree on the task.
Report build_report(const std::vector<RunInfo>& runs);

// strategies.csv, ablation.csv, curves_partB.svg, curves_partA.svg
void write_report(const std::filesystem::path& out_dir, const Report& report);

}  // namespace voxal
