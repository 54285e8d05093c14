#pragma once

#include <cstdint>
#include <vector>

#include "voxal/loss.hpp"
#include "voxal/network.hpp"
#include "voxal/optimizer.hpp"
#include "voxal/volume.hpp"

namespace voxal {

// Production training scalar. Double precision is reserved for the
// gradient checker.
using Real = float;

struct TrainTrace {
    std::vector<double> losses;  // batch-mean loss per iteration
};

// Runs `iters` SGD steps over the (volume, sparse-target) pairs, each step on
// opt.hyper.batch_size volumes drawn round-robin from a seeded shuffled
// order. Bit-deterministic in (model, data, seed).
TrainTrace train_round(ModelParams<Real>& model, const std::vector<Volume>& volumes,
                       const std::vector<LabelVolume>& targets, int iters,
                       OptimizerState<Real>& opt, std::uint64_t shuffle_seed,
                       const std::vector<double>& class_weights);

}  // namespace voxal
