#include "voxal/volume.hpp"

namespace voxal {

bool LabelVolume::fully_annotated() const {
    const std::uint8_t u = unlabeled();
    for (std::uint8_t v : data)
        if (v == u) return false;
    return true;
}

std::vector<std::size_t> LabelVolume::histogram() const {
    std::vector<std::size_t> counts(static_cast<std::size_t>(num_classes) + 1, 0);
    for (std::uint8_t v : data) {
        if (v < counts.size()) ++counts[v];
    }
    return counts;
}

}  // namespace voxal
