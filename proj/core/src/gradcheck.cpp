#include "voxal/gradcheck.hpp"

#include <algorithm>
#include <cmath>

#include "voxal/loss.hpp"
#include "voxal/rng.hpp"

namespace voxal {

GradCheckReport gradient_check(const ArchConfig& arch, Dims dims, std::uint64_t seed,
                               int min_samples, double epsilon) {
    Rng rng(mix_seed(seed, 0x4744434bull));  // "GDCK"

    Volume input(dims);
    for (float& v : input.data) v = static_cast<float>(rng.uniform01());

    // Random targets with a few fully unlabeled slices so the zero-weight
    // class participates.
    LabelVolume target(dims, arch.num_classes);
    for (std::uint32_t d = 0; d < dims.d; ++d) {
        const bool unlabeled = rng.uniform01() < 0.25;
        std::uint8_t* slice = target.slice(d);
        for (std::size_t i = 0; i < dims.slice_voxels(); ++i)
            slice[i] = unlabeled ? target.unlabeled()
                                 : static_cast<std::uint8_t>(rng.below(arch.num_classes));
    }
    const std::vector<double> weights = default_class_weights(arch.num_classes);

    ModelParams<double> model = init_params<double>(arch, mix_seed(seed, 1));
    const Tensor4<double> x = tensor_from_volume<double>(input);

    Cache<double> cache;
    ForwardOutput<double> fo = forward(model, x, &cache);
    LossResult<double> base = weighted_cross_entropy(fo.prob, target, weights);
    ModelParams<double> grads = zeros_like(model);
    backward(model, cache, base.grad_zr, grads);

    auto loss_at = [&]() {
        ForwardOutput<double> f = forward(model, x);
        return weighted_cross_entropy(f.prob, target, weights).loss;
    };

    auto prefs = collect_params(model);
    auto grefs = collect_params(grads);

    GradCheckReport report;
    report.num_params = param_count(model);
    const int per_array =
        std::max(1, (min_samples + static_cast<int>(prefs.size()) - 1) / static_cast<int>(prefs.size()));

    for (std::size_t a = 0; a < prefs.size(); ++a) {
        std::vector<double>& p = *prefs[a].data;
        const std::vector<double>& g = *grefs[a].data;
        for (int s = 0; s < per_array; ++s) {
            const std::size_t i = static_cast<std::size_t>(rng.below(p.size()));
            const double saved = p[i];
            p[i] = saved + epsilon;
            const double lp = loss_at();
            p[i] = saved - epsilon;
            const double lm = loss_at();
            p[i] = saved;
            const double gn = (lp - lm) / (2.0 * epsilon);
            const double ga = g[i];
            const double rel = std::abs(ga - gn) / std::max({std::abs(ga), std::abs(gn), 1e-8});
            ++report.num_checked;
            if (rel > report.max_rel_error) {
                report.max_rel_error = rel;
                report.worst_param = prefs[a].name + "[" + std::to_string(i) + "]";
            }
        }
    }
    return report;
}

}  // namespace voxal
