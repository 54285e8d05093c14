#pragma once

#include <cstdint>
#include <vector>

#include "voxal/volume.hpp"

namespace voxal {

// Per-volume annotation flags over the axial slices. Slices only ever go
// from unannotated to annotated.
struct AnnotationMask {
    std::vector<std::uint8_t> flags;

    AnnotationMask() = default;
    explicit AnnotationMask(int slices) : flags(static_cast<std::size_t>(slices), 0) {}

    int size() const { return static_cast<int>(flags.size()); }
    bool annotated(int slice) const { return flags[static_cast<std::size_t>(slice)] != 0; }
    void annotate(int slice) { flags[static_cast<std::size_t>(slice)] = 1; }

    int count() const;
    double ratio() const;
    bool subset_of(const AnnotationMask& other) const;
};

// Flags exactly the indices {0, K, 2K, ...} below D.
AnnotationMask seed_equal_interval(int slices, int spacing);

// Simulated expert annotation: slices flagged in the mask copy the ground
// truth, every other voxel becomes the UNLABELED sentinel. Idempotent for a
// fixed mask and monotone as the mask grows.
LabelVolume reveal_annotation(const LabelVolume& gt, const AnnotationMask& mask);

}  // namespace voxal
