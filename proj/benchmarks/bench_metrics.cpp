#include <benchmark/benchmark.h>

#include "voxal/metrics.hpp"
#include "voxal/phantom.hpp"
#include "voxal/rng.hpp"

using namespace voxal;

namespace {

LabelVolume random_labels(Dims dims, int classes, std::uint64_t seed) {
    LabelVolume lab(dims, classes);
    Rng rng(seed);
    for (auto& v : lab.data) v = static_cast<std::uint8_t>(rng.below(classes));
    return lab;
}

void BM_dsc_per_slice(benchmark::State& state) {
    const auto a = random_labels({32, 32, 32}, 4, 1);
    const auto b = random_labels({32, 32, 32}, 4, 2);
    int slice = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(dsc_per_slice(a, b, slice));
        slice = (slice + 1) % 32;
    }
}
BENCHMARK(BM_dsc_per_slice);

void BM_volume_f1(benchmark::State& state) {
    const auto a = random_labels({32, 32, 32}, 4, 3);
    const auto b = random_labels({32, 32, 32}, 4, 4);
    for (auto _ : state) benchmark::DoNotOptimize(volume_f1(a, b));
}
BENCHMARK(BM_volume_f1);

void BM_generate_phantom(benchmark::State& state) {
    PhantomSpec spec;
    spec.task = Task::tissue;
    spec.num_classes = 4;
    spec.size = {32, 32, 32};
    std::uint64_t seed = 0;
    for (auto _ : state) {
        spec.seed = seed++;
        auto out = generate_phantom(spec);
        benchmark::DoNotOptimize(out.second.data.data());
    }
}
BENCHMARK(BM_generate_phantom);

}  // namespace
