#include <doctest.h>

#include <stdexcept>

#include "voxal/phantom.hpp"

using namespace voxal;

TEST_CASE("phantom generation is a pure function of the spec") {
    PhantomSpec spec;
    spec.task = Task::brain;
    spec.size = {16, 16, 16};
    spec.seed = 7;
    const auto [v1, l1] = generate_phantom(spec);
    const auto [v2, l2] = generate_phantom(spec);
    CHECK(v1.data == v2.data);
    CHECK(l1.data == l2.data);

    spec.seed = 8;
    const auto [v3, l3] = generate_phantom(spec);
    CHECK(v1.data != v3.data);
}

TEST_CASE("brain phantom contains exactly classes {0,1}, both nonempty") {
    PhantomSpec spec;
    spec.task = Task::brain;
    spec.size = {32, 32, 32};
    spec.seed = 11;
    const auto [vol, labels] = generate_phantom(spec);
    const auto hist = labels.histogram();
    CHECK(hist[0] > 0);
    CHECK(hist[1] > 0);
    CHECK(hist[2] == 0);  // no unlabeled voxels in ground truth
    CHECK(labels.fully_annotated());
    CHECK(vol.dims == labels.dims);
}

TEST_CASE("tissue phantom populates all four classes, ventricle smallest") {
    PhantomSpec spec;
    spec.task = Task::tissue;
    spec.num_classes = 4;
    spec.size = {32, 32, 32};
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        spec.seed = seed;
        const auto [vol, labels] = generate_phantom(spec);
        const auto hist = labels.histogram();
        for (int c = 0; c < 4; ++c) CHECK(hist[static_cast<std::size_t>(c)] > 0);
        CHECK(hist[3] < hist[1]);  // ventricle built smaller than the outer shell
        CHECK(hist[4] == 0);
    }
}

TEST_CASE("intensities stay in [0,1]") {
    PhantomSpec spec;
    spec.task = Task::tissue;
    spec.num_classes = 4;
    spec.size = {16, 16, 16};
    spec.noise_sigma = 0.5;  // extreme noise still clamps
    spec.seed = 3;
    const auto [vol, labels] = generate_phantom(spec);
    for (float v : vol.data) {
        CHECK(v >= 0.0f);
        CHECK(v <= 1.0f);
    }
}

TEST_CASE("invalid specs are rejected before generation") {
    PhantomSpec spec;
    spec.task = Task::brain;
    spec.size = {15, 16, 16};  // odd
    CHECK_THROWS_AS(generate_phantom(spec), std::invalid_argument);

    spec.size = {16, 16, 16};
    spec.num_classes = 4;  // wrong for brain
    CHECK_THROWS_AS(generate_phantom(spec), std::invalid_argument);

    spec.num_classes = 2;
    spec.noise_sigma = -1.0;
    CHECK_THROWS_AS(generate_phantom(spec), std::invalid_argument);

    PhantomSpec tiny;
    tiny.task = Task::tissue;
    tiny.num_classes = 4;
    tiny.size = {8, 8, 8};  // too small to carve a ventricle
    CHECK_THROWS_AS(generate_phantom(tiny), std::invalid_argument);
}
