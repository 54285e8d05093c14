#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "voxal/annotation.hpp"
#include "voxal/metrics.hpp"
#include "voxal/network.hpp"
#include "voxal/train.hpp"

namespace voxal {

enum class StrategyKind {
    attention_pdsc,       // per-slice Dice between SR1 and SR2 (binary task)
    attention_paccuracy,  // per-slice accuracy between SR1 and SR2 (multi-class)
    random,
    equal_interval,
    uncertainty_entropy,
};

struct Strategy {
    StrategyKind kind = StrategyKind::attention_pdsc;
    std::uint64_t sub_seed = 0;  // per (volume, round) for the random strategy
};

std::string strategy_name(StrategyKind kind);
// Names accepted on the command line; "attention" resolves per task.
StrategyKind parse_strategy(const std::string& name, int num_classes);

// The task-appropriate pseudo metric: P-DSC when binary, P-accuracy otherwise.
MetricTag task_pseudo_metric(int num_classes);

// Raw Shannon entropy (nats) summed over a slice, computed on the first C
// softmax channels renormalized per voxel.
std::vector<double> entropy_slice_sums(const Tensor4<Real>& prob, int num_classes);

// Scores every axial slice, lower = more informative. Entropy and distance
// scores are negated so that convention holds uniformly. A P-DSC request on a
// multi-class volume proceeds with a warning record in the table.
ScoreTable score_slices(const Strategy& strategy, const ForwardOutput<Real>& fo,
                        const AnnotationMask& mask, int num_classes);

// The `budget` lowest-scoring unannotated slices (ties by ascending index),
// returned sorted ascending and disjoint from the mask.
std::vector<int> select_slices(const ScoreTable& table, const AnnotationMask& mask, int budget);

}  // namespace voxal
