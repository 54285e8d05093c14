#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "voxal/phantom.hpp"
#include "voxal/volume.hpp"

namespace voxal {

// Index of a generated dataset: Part A (sparsely labeled training volumes)
// and Part B (held-out test volumes). Paths are stored relative to the
// manifest file.
struct DatasetManifest {
    Task task = Task::brain;
    int num_classes = 2;
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, std::string>> train;  // (volume, labels)
    std::vector<std::pair<std::string, std::string>> test;
};

void write_manifest(const std::filesystem::path& path, const DatasetManifest& m);
DatasetManifest read_manifest(const std::filesystem::path& path);

// Fully loaded dataset; validates that all referenced grids exist and share
// dims and class count.
struct Dataset {
    DatasetManifest manifest;
    std::vector<Volume> train_volumes;
    std::vector<LabelVolume> train_gt;
    std::vector<Volume> test_volumes;
    std::vector<LabelVolume> test_gt;

    Dims dims() const { return train_volumes.front().dims; }
    int num_classes() const { return manifest.num_classes; }
};

Dataset load_dataset(const std::filesystem::path& manifest_path);

}  // namespace voxal
