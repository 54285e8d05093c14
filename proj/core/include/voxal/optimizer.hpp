#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "voxal/network.hpp"

namespace voxal {

struct OptimHyper {
    double learning_rate = 0.001;
    double momentum = 0.9;
    double weight_decay = 0.0001;
    int batch_size = 2;
};

template <typename T>
struct OptimizerState {
    OptimHyper hyper;
    std::vector<std::vector<T>> velocity;  // aligned with collect_params order

    void init(const ModelParams<T>& m) {
        velocity.clear();
        for (const auto& ref : collect_params(m)) velocity.emplace_back(ref.data->size(), T(0));
    }
};

// g' = g + weight_decay * p (weights only); v' = momentum * v + g';
// p' = p - lr * v'. Rejects non-finite gradients before touching anything.
template <typename T>
void sgd_step(ModelParams<T>& params, const ModelParams<T>& grads, OptimizerState<T>& state) {
    auto prefs = collect_params(params);
    auto grefs = collect_params(grads);
    if (state.velocity.size() != prefs.size())
        throw std::invalid_argument("sgd_step: optimizer state not initialized for this model");

    for (std::size_t a = 0; a < grefs.size(); ++a)
        for (const T g : *grefs[a].data)
            if (!std::isfinite(static_cast<double>(g)))
                throw std::runtime_error("sgd_step: non-finite gradient in " + grefs[a].name);

    const T lr = static_cast<T>(state.hyper.learning_rate);
    const T mom = static_cast<T>(state.hyper.momentum);
    for (std::size_t a = 0; a < prefs.size(); ++a) {
        std::vector<T>& p = *prefs[a].data;
        const std::vector<T>& g = *grefs[a].data;
        std::vector<T>& v = state.velocity[a];
        if (p.size() != g.size() || p.size() != v.size())
            throw std::invalid_argument("sgd_step: shape mismatch in " + prefs[a].name);
        const T wd = prefs[a].is_bias ? T(0) : static_cast<T>(state.hyper.weight_decay);
        for (std::size_t i = 0; i < p.size(); ++i) {
            const T adj = g[i] + wd * p[i];
            v[i] = mom * v[i] + adj;
            p[i] -= lr * v[i];
        }
    }
}

}  // namespace voxal
