#include "voxal/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace voxal {

std::string metric_name(MetricTag tag) {
    switch (tag) {
        case MetricTag::r_dsc: return "r_dsc";
        case MetricTag::p_dsc: return "p_dsc";
        case MetricTag::r_accuracy: return "r_accuracy";
        case MetricTag::p_accuracy: return "p_accuracy";
        case MetricTag::entropy: return "entropy";
        case MetricTag::random: return "random";
        case MetricTag::interval: return "interval";
    }
    return "?";
}

std::vector<int> ScoreTable::ordering() const {
    std::vector<int> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [this](int lhs, int rhs) {
        if (scores[lhs].value != scores[rhs].value) return scores[lhs].value < scores[rhs].value;
        return scores[lhs].slice < scores[rhs].slice;
    });
    return order;
}

double ScoreTable::mean_value() const {
    if (scores.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& s : scores) sum += s.value;
    return sum / static_cast<double>(scores.size());
}

namespace {

void check_pair(const LabelVolume& a, const LabelVolume& b, int slice) {
    if (!(a.dims == b.dims)) throw std::invalid_argument("metrics: dims mismatch");
    if (a.num_classes != b.num_classes) throw std::invalid_argument("metrics: class count mismatch");
    if (slice < 0 || slice >= static_cast<int>(a.dims.d))
        throw std::invalid_argument("metrics: slice index out of range");
}

}  // namespace

double dsc_per_slice(const LabelVolume& a, const LabelVolume& b, int slice) {
    check_pair(a, b, slice);
    const int classes = a.num_classes;
    const std::uint8_t* pa = a.slice(static_cast<std::uint32_t>(slice));
    const std::uint8_t* pb = b.slice(static_cast<std::uint32_t>(slice));
    const std::size_t n = a.dims.slice_voxels();

    // Integer counts per class; division happens last.
    std::vector<std::int64_t> ca(classes, 0), cb(classes, 0), inter(classes, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint8_t va = pa[i], vb = pb[i];
        if (va >= classes || vb >= classes)
            throw std::invalid_argument("metrics: operand contains unlabeled voxels");
        ++ca[va];
        ++cb[vb];
        if (va == vb) ++inter[va];
    }

    double sum = 0.0;
    int present = 0;
    for (int c = 1; c < classes; ++c) {
        if (ca[c] + cb[c] == 0) continue;
        ++present;
        sum += 2.0 * static_cast<double>(inter[c]) / static_cast<double>(ca[c] + cb[c]);
    }
    return present == 0 ? 1.0 : sum / present;
}

double accuracy_per_slice(const LabelVolume& a, const LabelVolume& b, int slice) {
    check_pair(a, b, slice);
    const int classes = a.num_classes;
    const std::uint8_t* pa = a.slice(static_cast<std::uint32_t>(slice));
    const std::uint8_t* pb = b.slice(static_cast<std::uint32_t>(slice));
    const std::size_t n = a.dims.slice_voxels();

    std::int64_t agree = 0, nza = 0, nzb = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint8_t va = pa[i], vb = pb[i];
        if (va >= classes || vb >= classes)
            throw std::invalid_argument("metrics: operand contains unlabeled voxels");
        if (va != 0) ++nza;
        if (vb != 0) ++nzb;
        if (va == vb && va != 0) ++agree;
    }
    const std::int64_t denom = nza + nzb;
    return denom == 0 ? 1.0 : 2.0 * static_cast<double>(agree) / static_cast<double>(denom);
}

double volume_f1(const LabelVolume& pred, const LabelVolume& gt) {
    if (!(pred.dims == gt.dims)) throw std::invalid_argument("volume_f1: dims mismatch");
    if (pred.num_classes != gt.num_classes)
        throw std::invalid_argument("volume_f1: class count mismatch");
    const int classes = pred.num_classes;

    std::vector<std::int64_t> cp(classes, 0), cg(classes, 0), inter(classes, 0);
    for (std::size_t i = 0; i < pred.data.size(); ++i) {
        const std::uint8_t vp = pred.data[i], vg = gt.data[i];
        if (vp >= classes || vg >= classes)
            throw std::invalid_argument("volume_f1: operand contains unlabeled voxels");
        ++cp[vp];
        ++cg[vg];
        if (vp == vg) ++inter[vp];
    }
    double sum = 0.0;
    for (int c = 1; c < classes; ++c) {
        sum += cp[c] + cg[c] == 0
                   ? 1.0
                   : 2.0 * static_cast<double>(inter[c]) / static_cast<double>(cp[c] + cg[c]);
    }
    return sum / (classes - 1);
}

}  // namespace voxal
