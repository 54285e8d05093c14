#include "voxal/train.hpp"

#include <numeric>
#include <stdexcept>

#include "voxal/rng.hpp"

namespace voxal {

TrainTrace train_round(ModelParams<Real>& model, const std::vector<Volume>& volumes,
                       const std::vector<LabelVolume>& targets, int iters,
                       OptimizerState<Real>& opt, std::uint64_t shuffle_seed,
                       const std::vector<double>& class_weights) {
    if (volumes.empty()) throw std::invalid_argument("train_round: empty dataset");
    if (volumes.size() != targets.size())
        throw std::invalid_argument("train_round: volume/target count mismatch");
    if (opt.hyper.batch_size < 1) throw std::invalid_argument("train_round: batch_size must be >= 1");

    TrainTrace trace;
    if (iters <= 0) return trace;

    std::vector<Tensor4<Real>> inputs;
    inputs.reserve(volumes.size());
    for (const Volume& v : volumes) inputs.push_back(tensor_from_volume<Real>(v));

    std::vector<std::size_t> order(volumes.size());
    std::iota(order.begin(), order.end(), 0);
    Rng rng(mix_seed(shuffle_seed, 0x545241494eull));  // "TRAIN"
    rng.shuffle(order);

    ModelParams<Real> grads = zeros_like(model);
    Cache<Real> cache;
    auto grad_refs = collect_params(grads);

    std::size_t cursor = 0;
    const int batch = opt.hyper.batch_size;
    for (int it = 0; it < iters; ++it) {
        for (auto& ref : grad_refs) std::fill(ref.data->begin(), ref.data->end(), Real(0));
        double loss_sum = 0.0;
        for (int b = 0; b < batch; ++b) {
            const std::size_t i = order[cursor];
            cursor = (cursor + 1) % order.size();
            ForwardOutput<Real> fo = forward(model, inputs[i], &cache);
            LossResult<Real> lr = weighted_cross_entropy(fo.prob, targets[i], class_weights);
            loss_sum += lr.loss;
            backward(model, cache, lr.grad_zr, grads);
        }
        const Real scale = Real(1) / static_cast<Real>(batch);
        for (auto& ref : grad_refs)
            for (Real& g : *ref.data) g *= scale;
        sgd_step(model, grads, opt);
        trace.losses.push_back(loss_sum / batch);
    }
    return trace;
}

}  // namespace voxal
