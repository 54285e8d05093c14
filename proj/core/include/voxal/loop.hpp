#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "voxal/manifest.hpp"
#include "voxal/optimizer.hpp"
#include "voxal/strategy.hpp"
#include "voxal/train.hpp"

namespace voxal {

struct LoopConfig {
    int seed_spacing = 16;         // K: initial annotation every K axial slices
    double budget_fraction = 0.05; // beta: ceil(beta * D) slices per volume per round
    double sigma = 0.005;          // stopping threshold on the mean pseudo metric
    int max_rounds = 12;
    int train_iters = 500;         // SGD iterations per round
    bool resume = true;            // fine-tune from the previous round's weights
    OptimHyper optim;
    std::uint64_t master_seed = 0;

    void validate() const;
};

// Stop when the mean pseudo metric moved by strictly less than sigma since
// the previous round; never stops on the first round.
bool stopping_check(std::optional<double> prev_mean, double cur_mean, double sigma);

struct RoundRecord {
    int round = 0;          // 0-based
    double ratio = 0.0;     // annotation ratio the model was trained on
    double mean_pseudo = 0.0;
    double part_a_f1 = 0.0;
    double part_b_f1 = 0.0;
    bool stopped = false;   // sigma rule fired at this round
    std::vector<std::vector<int>> selected;  // per training volume
    std::vector<double> loss_trace;
};

struct LoopHistory {
    std::vector<RoundRecord> rounds;
    std::vector<std::string> warnings;

    const RoundRecord& final_round() const { return rounds.back(); }
    // F1 the strategy achieved "at" a target budget: the first recorded round
    // whose trained ratio reached the target, else the final round (the loop
    // converged using less annotation than the target).
    const RoundRecord& round_at_ratio(double target) const;
};

// Optional per-round observer (checkpoints, score tables); may be null.
struct LoopObserver {
    virtual ~LoopObserver() = default;
    virtual void on_round(const RoundRecord& record, const ModelParams<Real>& model,
                          const std::vector<ScoreTable>& tables) = 0;
};

// The full query/annotate/fine-tune cycle on Part A with Part B evaluation
// each round. Deterministic in (config, dataset, strategy kind).
LoopHistory run_al_loop(const LoopConfig& config, const Dataset& data, StrategyKind strategy,
                        const ArchConfig& arch, LoopObserver* observer = nullptr);

}  // namespace voxal
