#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "voxal/tensor.hpp"
#include "voxal/volume.hpp"

namespace voxal {

// Per-class weights for the loss; index C (the UNLABELED class) is zero in
// every training configuration.
inline std::vector<double> default_class_weights(int num_classes) {
    std::vector<double> w(static_cast<std::size_t>(num_classes) + 1, 1.0);
    w.back() = 0.0;
    return w;
}

template <typename T>
struct LossResult {
    double loss = 0.0;
    Tensor4<T> grad_zr;  // gradient w.r.t. the recalibrated logits
};

// loss = -(1/Nw) * sum_v weights[t_v] * ln P[t_v, v], Nw = sum_v weights[t_v].
// Nw = 0 (e.g. every voxel unlabeled) gives zero loss and zero gradient.
template <typename T>
LossResult<T> weighted_cross_entropy(const Tensor4<T>& prob, const LabelVolume& target,
                                     const std::vector<double>& weights) {
    const std::size_t n = prob.spatial();
    if (target.dims.voxels() != n || target.dims.d != std::uint32_t(prob.d))
        throw std::invalid_argument("weighted_cross_entropy: target dims mismatch");
    if (weights.size() != std::size_t(prob.c))
        throw std::invalid_argument("weighted_cross_entropy: weights length must be C+1");

    LossResult<T> res;
    res.grad_zr.resize(prob.c, prob.d, prob.h, prob.w);

    // Compensated summation keeps the loss accurate to ~1 ulp, which the
    // central-difference gradient checker depends on.
    double nw = 0.0, loss_sum = 0.0, comp = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
        const std::uint8_t t = target.data[v];
        if (t >= weights.size())
            throw std::invalid_argument("weighted_cross_entropy: class ID out of range");
        const double wv = weights[t];
        if (wv == 0.0) continue;
        nw += wv;
        const double p = static_cast<double>(prob.v[std::size_t(t) * n + v]);
        const double term = -wv * std::log(std::max(p, 1e-30)) - comp;
        const double next = loss_sum + term;
        comp = (next - loss_sum) - term;
        loss_sum = next;
    }
    if (nw == 0.0) return res;

    res.loss = loss_sum / nw;
    // dL/dZr[c,v] = (w[t_v]/Nw) * (P[c,v] - [c == t_v])
    std::vector<T> scale(n, T(0));
    for (std::size_t v = 0; v < n; ++v) scale[v] = static_cast<T>(weights[target.data[v]] / nw);
    for (int c = 0; c < prob.c; ++c) {
        const T* pc = prob.chan(c);
        T* gc = res.grad_zr.chan(c);
        for (std::size_t v = 0; v < n; ++v) gc[v] = scale[v] * pc[v];
    }
    for (std::size_t v = 0; v < n; ++v) {
        const std::uint8_t t = target.data[v];
        res.grad_zr.v[std::size_t(t) * n + v] -= scale[v];
    }
    return res;
}

}  // namespace voxal
