#include <doctest.h>

#include <stdexcept>

#include "oracles.hpp"
#include "voxal/rank_stats.hpp"
#include "voxal/rng.hpp"

using namespace voxal;

TEST_CASE("identical series: rho = slope = 1") {
    const std::vector<double> v{0.2, 0.9, 0.4, 0.6, 0.1};
    const auto rc = rank_correlation(v, v);
    REQUIRE(rc.defined);
    CHECK(rc.spearman == doctest::Approx(1.0));
    CHECK(rc.slope == doctest::Approx(1.0));
    CHECK(rc.pearson == doctest::Approx(1.0));
}

TEST_CASE("reversed series with distinct values: rho = -1") {
    const std::vector<double> real{0.1, 0.2, 0.3, 0.4};
    const std::vector<double> est{0.4, 0.3, 0.2, 0.1};
    const auto rc = rank_correlation(est, real);
    REQUIRE(rc.defined);
    CHECK(rc.spearman == doctest::Approx(-1.0));
}

TEST_CASE("three-point hand computation: rho = 0.5") {
    // ranks real=[1,2,3], est=[2,1,3]: rho = 1 - 6*2/(3*8) = 0.5
    const std::vector<double> real{10.0, 20.0, 30.0};
    const std::vector<double> est{2.0, 1.0, 3.0};
    const auto rc = rank_correlation(est, real);
    REQUIRE(rc.defined);
    CHECK(rc.spearman == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("fractional ranks average over tie runs") {
    const auto r = fractional_ranks({3.0, 1.0, 3.0, 2.0});
    CHECK(r == std::vector<double>{3.5, 1.0, 3.5, 2.0});
}

TEST_CASE("matches the quadratic-rank oracle, ties included") {
    Rng rng(55);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<double> est(12), real(12);
        for (auto& v : est) v = static_cast<double>(rng.below(6));  // coarse grid forces ties
        for (auto& v : real) v = static_cast<double>(rng.below(6));
        const auto ranks = fractional_ranks(est);
        CHECK(ranks == oracle::ranks_quadratic(est));
        const auto rc = rank_correlation(est, real);
        if (rc.defined)
            CHECK(rc.spearman == doctest::Approx(oracle::spearman(est, real)).epsilon(1e-12));
    }
}

TEST_CASE("short or mismatched series are rejected") {
    CHECK_THROWS_AS(rank_correlation({1.0, 2.0}, {1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(rank_correlation({1.0, 2.0, 3.0}, {1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("constant series flag the correlation as undefined") {
    const auto rc = rank_correlation({0.5, 0.5, 0.5}, {0.1, 0.2, 0.3});
    CHECK_FALSE(rc.defined);
}

TEST_CASE("slope and rho diverge only through tie-induced variance imbalance") {
    // Without ties, slope equals rho exactly.
    const std::vector<double> real{4.0, 1.0, 3.0, 2.0, 5.0};
    const std::vector<double> est{3.9, 1.4, 2.2, 2.1, 4.8};
    const auto rc = rank_correlation(est, real);
    REQUIRE(rc.defined);
    CHECK(rc.slope == doctest::Approx(rc.spearman).epsilon(1e-12));
}
