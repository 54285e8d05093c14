#include <doctest.h>

#include "voxal/gradcheck.hpp"
#include "voxal/loss.hpp"

using namespace voxal;

namespace {

ArchConfig check_arch() {
    ArchConfig arch;
    arch.base_channels = 3;
    arch.depth = 1;
    arch.num_classes = 2;
    return arch;
}

}  // namespace

TEST_CASE("analytic gradients match central differences below 1e-4") {
    const auto report = gradient_check(check_arch(), Dims{4, 4, 4}, 17);
    CAPTURE(report.worst_param);
    CHECK(report.num_params <= 5000);
    CHECK(report.num_checked >= 200);
    CHECK(report.max_rel_error < 1e-4);
}

TEST_CASE("gradient check is deterministic for a fixed seed") {
    const auto a = gradient_check(check_arch(), Dims{4, 4, 4}, 3, 60);
    const auto b = gradient_check(check_arch(), Dims{4, 4, 4}, 3, 60);
    CHECK(a.max_rel_error == b.max_rel_error);
    CHECK(a.num_checked == b.num_checked);
    CHECK(a.worst_param == b.worst_param);
}

TEST_CASE("zero loss weights make analytic and numeric head-bias gradients exactly zero") {
    ArchConfig arch = check_arch();
    const auto model = init_params<double>(arch, 5);
    Tensor4<double> x(1, 4, 4, 4);  // zero input
    LabelVolume target(Dims{4, 4, 4}, 2, 0);
    const std::vector<double> weights(3, 0.0);  // every class weight zero

    Cache<double> cache;
    auto fo = forward(model, x, &cache);
    auto res = weighted_cross_entropy(fo.prob, target, weights);
    CHECK(res.loss == 0.0);
    auto grads = zeros_like(model);
    backward(model, cache, res.grad_zr, grads);
    for (double g : grads.head.b) CHECK(g == 0.0);

    // Central difference of an identically-zero loss.
    auto probe = model;
    probe.head.b[0] += 1e-4;
    const double lp = weighted_cross_entropy(forward(probe, x).prob, target, weights).loss;
    probe.head.b[0] -= 2e-4;
    const double lm = weighted_cross_entropy(forward(probe, x).prob, target, weights).loss;
    CHECK((lp - lm) / 2e-4 == 0.0);
}
