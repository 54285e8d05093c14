#pragma once

#include <filesystem>

#include "voxal/network.hpp"
#include "voxal/train.hpp"

namespace voxal {

// SMDL checkpoint: magic "SMDL", version u16=1, dtype u8 (0 = f32, 1 = f64),
// flags u8=0, architecture block (base_channels, depth, num_classes,
// cam_reduction as u32, attention as u8), then the parameter arrays raw in
// enumeration order, little-endian.
void save_model(const std::filesystem::path& path, const ModelParams<float>& m);
void save_model(const std::filesystem::path& path, const ModelParams<double>& m);

ModelParams<Real> load_model(const std::filesystem::path& path);

}  // namespace voxal
