#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace voxal {

// Grid dimensions, axial slice count first.
struct Dims {
    std::uint32_t d = 0;
    std::uint32_t h = 0;
    std::uint32_t w = 0;

    std::size_t voxels() const { return std::size_t(d) * h * w; }
    std::size_t slice_voxels() const { return std::size_t(h) * w; }
    bool operator==(const Dims&) const = default;
};

// Scalar intensity grid in [0,1], D-major layout:
// index(d,h,w) = (d*H + h)*W + w. Axial slices are contiguous blocks.
struct Volume {
    Dims dims;
    std::vector<float> data;

    Volume() = default;
    explicit Volume(Dims dm, float fill = 0.0f) : dims(dm), data(dm.voxels(), fill) {}

    float& at(std::uint32_t d, std::uint32_t h, std::uint32_t w) {
        return data[(std::size_t(d) * dims.h + h) * dims.w + w];
    }
    float at(std::uint32_t d, std::uint32_t h, std::uint32_t w) const {
        return data[(std::size_t(d) * dims.h + h) * dims.w + w];
    }
    const float* slice(std::uint32_t d) const { return data.data() + std::size_t(d) * dims.slice_voxels(); }
};

// Class-ID grid over the same layout. IDs run 0..num_classes-1; the value
// num_classes itself is the UNLABELED sentinel for slices that have not
// been annotated yet.
struct LabelVolume {
    Dims dims;
    int num_classes = 2;
    std::vector<std::uint8_t> data;

    LabelVolume() = default;
    LabelVolume(Dims dm, int classes, std::uint8_t fill = 0)
        : dims(dm), num_classes(classes), data(dm.voxels(), fill) {}

    std::uint8_t unlabeled() const { return static_cast<std::uint8_t>(num_classes); }

    std::uint8_t& at(std::uint32_t d, std::uint32_t h, std::uint32_t w) {
        return data[(std::size_t(d) * dims.h + h) * dims.w + w];
    }
    std::uint8_t at(std::uint32_t d, std::uint32_t h, std::uint32_t w) const {
        return data[(std::size_t(d) * dims.h + h) * dims.w + w];
    }
    std::uint8_t* slice(std::uint32_t d) { return data.data() + std::size_t(d) * dims.slice_voxels(); }
    const std::uint8_t* slice(std::uint32_t d) const {
        return data.data() + std::size_t(d) * dims.slice_voxels();
    }

    bool fully_annotated() const;
    // Voxel count per ID, indexed 0..num_classes (last bin = unlabeled).
    std::vector<std::size_t> histogram() const;
};

}  // namespace voxal
