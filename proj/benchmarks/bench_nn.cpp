#include <benchmark/benchmark.h>

#include "voxal/loss.hpp"
#include "voxal/network.hpp"
#include "voxal/rng.hpp"
#include "voxal/train.hpp"

using namespace voxal;

namespace {

Tensor4<Real> random_input(int dim, std::uint64_t seed) {
    Tensor4<Real> t(1, dim, dim, dim);
    Rng rng(seed);
    for (auto& v : t.v) v = static_cast<Real>(rng.uniform01());
    return t;
}

ArchConfig bench_arch() {
    ArchConfig arch;
    arch.base_channels = 8;
    arch.depth = 1;
    arch.num_classes = 2;
    return arch;
}

void BM_conv3d_forward(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    ConvParams<Real> p;
    p.resize(8, 8, 3);
    Rng rng(1);
    for (auto& w : p.w) w = static_cast<Real>(rng.normal() * 0.1);
    Tensor4<Real> x(8, dim, dim, dim);
    for (auto& v : x.v) v = static_cast<Real>(rng.uniform01());
    Tensor4<Real> y;
    for (auto _ : state) {
        conv3d(x, p, y);
        benchmark::DoNotOptimize(y.v.data());
    }
    const double flops = 2.0 * 8 * 8 * 27 * x.spatial();
    state.counters["GFLOP/s"] =
        benchmark::Counter(flops, benchmark::Counter::kIsIterationInvariantRate,
                           benchmark::Counter::kIs1000);
}
BENCHMARK(BM_conv3d_forward)->Arg(16)->Arg(32);

void BM_network_forward(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    const auto model = init_params<Real>(bench_arch(), 2);
    const auto x = random_input(dim, 3);
    Cache<Real> cache;
    for (auto _ : state) {
        auto fo = forward(model, x, &cache);
        benchmark::DoNotOptimize(fo.prob.v.data());
    }
}
BENCHMARK(BM_network_forward)->Arg(16)->Arg(32);

void BM_train_step(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    auto model = init_params<Real>(bench_arch(), 4);
    const auto x = random_input(dim, 5);
    LabelVolume target(Dims{std::uint32_t(dim), std::uint32_t(dim), std::uint32_t(dim)}, 2);
    Rng rng(6);
    for (auto& v : target.data) v = static_cast<std::uint8_t>(rng.below(2));
    const auto weights = default_class_weights(2);
    auto grads = zeros_like(model);
    Cache<Real> cache;
    auto refs = collect_params(grads);
    for (auto _ : state) {
        for (auto& r : refs) std::fill(r.data->begin(), r.data->end(), Real(0));
        auto fo = forward(model, x, &cache);
        auto loss = weighted_cross_entropy(fo.prob, target, weights);
        backward(model, cache, loss.grad_zr, grads);
        benchmark::DoNotOptimize(grads.head.w.data());
    }
}
BENCHMARK(BM_train_step)->Arg(16)->Arg(32);

}  // namespace
