#include "voxal/annotation.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>

namespace voxal {

int AnnotationMask::count() const {
    int n = 0;
    for (std::uint8_t f : flags) n += f != 0;
    return n;
}

double AnnotationMask::ratio() const {
    return flags.empty() ? 0.0 : static_cast<double>(count()) / static_cast<double>(flags.size());
}

bool AnnotationMask::subset_of(const AnnotationMask& other) const {
    if (flags.size() != other.flags.size()) return false;
    for (std::size_t i = 0; i < flags.size(); ++i)
        if (flags[i] != 0 && other.flags[i] == 0) return false;
    return true;
}

AnnotationMask seed_equal_interval(int slices, int spacing) {
    if (spacing < 1 || spacing > slices)
        throw std::invalid_argument("seed_equal_interval: spacing must be in [1, D]");
    AnnotationMask mask(slices);
    for (int i = 0; i < slices; i += spacing) mask.annotate(i);
    return mask;
}

LabelVolume reveal_annotation(const LabelVolume& gt, const AnnotationMask& mask) {
    if (mask.size() != static_cast<int>(gt.dims.d))
        throw std::invalid_argument("reveal_annotation: mask length must equal axial slice count");
    LabelVolume sparse(gt.dims, gt.num_classes, gt.unlabeled());
    const std::size_t per_slice = gt.dims.slice_voxels();
    for (int d = 0; d < mask.size(); ++d) {
        if (!mask.annotated(d)) continue;
        std::memcpy(sparse.slice(static_cast<std::uint32_t>(d)),
                    gt.slice(static_cast<std::uint32_t>(d)), per_slice);
    }
    return sparse;
}

}  // namespace voxal
