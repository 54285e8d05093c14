#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "voxal/volume.hpp"

namespace voxal {

// Which quantity a per-slice score holds. The real metrics compare a
// prediction with ground truth; the pseudo metrics compare the two
// predictions SR1 (recalibrated logits) and SR2 (attention map) — same
// formulas, different operands.
enum class MetricTag {
    r_dsc,
    p_dsc,
    r_accuracy,
    p_accuracy,
    entropy,
    random,
    interval,
};

std::string metric_name(MetricTag tag);

struct SliceScore {
    int slice = 0;
    double value = 0.0;
    MetricTag tag = MetricTag::p_dsc;
};

// One score per axial slice; ordering() sorts ascending by value with ties
// broken by ascending slice index (lowest score = most informative).
struct ScoreTable {
    std::vector<SliceScore> scores;
    std::string warning;  // nonempty when a strategy/task mismatch was noted

    std::vector<int> ordering() const;
    double mean_value() const;
};

// Dice per axial slice: per non-background class 2|a=c & b=c| / (|a=c|+|b=c|),
// averaged over the classes present in either operand on that slice; 1.0 when
// no non-background class is present in either (agreement on absence).
// For binary volumes this reduces to the plain foreground Dice.
double dsc_per_slice(const LabelVolume& a, const LabelVolume& b, int slice);

// Accuracy per axial slice: 2 * |{v : a[v]=b[v], a[v]!=0}| / (|a!=0|+|b!=0|),
// 1.0 when the denominator is zero.
double accuracy_per_slice(const LabelVolume& a, const LabelVolume& b, int slice);

// Whole-volume Dice averaged over all non-background classes 1..C-1
// (class empty in both -> 1.0).
double volume_f1(const LabelVolume& pred, const LabelVolume& gt);

}  // namespace voxal
