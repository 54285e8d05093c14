#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "oracles.hpp"
#include "voxal/strategy.hpp"

using namespace voxal;

namespace {

// Synthetic forward output with prescribed logits and attention maps.
ForwardOutput<Real> synthetic_fo(const Tensor4<Real>& zr, const Tensor4<Real>& am) {
    ForwardOutput<Real> fo;
    fo.z = zr;
    fo.zr = zr;
    fo.am = am;
    softmax_channels(zr, fo.prob);
    return fo;
}

}  // namespace

TEST_CASE("strategy names parse, with attention resolved per task") {
    CHECK(parse_strategy("attention", 2) == StrategyKind::attention_pdsc);
    CHECK(parse_strategy("attention", 4) == StrategyKind::attention_paccuracy);
    CHECK(parse_strategy("random", 2) == StrategyKind::random);
    CHECK(parse_strategy("interval", 2) == StrategyKind::equal_interval);
    CHECK(parse_strategy("uncertainty", 2) == StrategyKind::uncertainty_entropy);
    CHECK_THROWS_AS(parse_strategy("bogus", 2), std::invalid_argument);
}

TEST_CASE("uncertainty: uniform prediction scores V*ln2 raw entropy per slice") {
    Tensor4<Real> zr(3, 2, 4, 4);
    // Equal logits on the first two channels, suppressed unlabeled channel:
    // the renormalized first-C distribution is uniform.
    for (std::size_t i = 0; i < zr.spatial(); ++i) {
        zr.chan(0)[i] = 1.0f;
        zr.chan(1)[i] = 1.0f;
        zr.chan(2)[i] = -5.0f;
    }
    Tensor4<Real> am(3, 2, 4, 4);
    am.fill(0.5f);
    const auto fo = synthetic_fo(zr, am);

    const auto sums = entropy_slice_sums(fo.prob, 2);
    const double expected = 16.0 * std::log(2.0);
    CHECK(sums[0] == doctest::Approx(expected).epsilon(1e-6));

    const auto table = score_slices({StrategyKind::uncertainty_entropy, 0}, fo, AnnotationMask(2), 2);
    CHECK(table.scores[0].value == doctest::Approx(-expected).epsilon(1e-6));
    CHECK(table.scores[0].tag == MetricTag::entropy);
}

TEST_CASE("uncertainty: one-hot prediction has zero entropy") {
    Tensor4<Real> zr(3, 1, 2, 2);
    for (std::size_t i = 0; i < zr.spatial(); ++i) {
        zr.chan(0)[i] = 60.0f;
        zr.chan(1)[i] = 0.0f;
        zr.chan(2)[i] = 0.0f;
    }
    Tensor4<Real> am(3, 1, 2, 2);
    am.fill(0.5f);
    const auto fo = synthetic_fo(zr, am);
    const auto sums = entropy_slice_sums(fo.prob, 2);
    CHECK(sums[0] == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("attention scoring: SR1 = SR2 on a slice gives score 1") {
    Tensor4<Real> zr(3, 2, 2, 2);
    Tensor4<Real> am(3, 2, 2, 2);
    // Slice 0: both predict class 1 everywhere. Slice 1: they disagree.
    for (std::size_t i = 0; i < zr.spatial(); ++i) {
        const bool first = i < zr.spatial() / 2;
        zr.chan(0)[i] = first ? 0.0f : 2.0f;
        zr.chan(1)[i] = first ? 2.0f : 0.0f;
        zr.chan(2)[i] = -1.0f;
        am.chan(0)[i] = first ? 0.1f : 0.1f;
        am.chan(1)[i] = first ? 0.9f : 0.9f;
        am.chan(2)[i] = 0.05f;
    }
    const auto fo = synthetic_fo(zr, am);
    const auto table = score_slices({StrategyKind::attention_pdsc, 0}, fo, AnnotationMask(2), 2);
    CHECK(table.scores[0].value == 1.0);
    CHECK(table.scores[1].value == 0.0);
    CHECK(table.warning.empty());

    // Same result through the metric directly.
    const auto pred = predictions(fo, 2);
    CHECK(table.scores[0].value == dsc_per_slice(pred.sr1, pred.sr2, 0));
}

TEST_CASE("P-DSC on a multi-class task proceeds with a warning record") {
    const auto zr = oracle::random_tensor<Real>(5, 2, 2, 2, 3);
    const auto am = oracle::random_tensor<Real>(5, 2, 2, 2, 4, 0.4);
    auto fo = synthetic_fo(zr, am);
    for (auto& v : fo.am.v) v = std::abs(v) + 0.1f;
    const auto table = score_slices({StrategyKind::attention_pdsc, 0}, fo, AnnotationMask(2), 4);
    CHECK(!table.warning.empty());
    CHECK(table.scores.size() == 2);
}

TEST_CASE("random scores are reproducible per sub-seed") {
    const auto zr = oracle::random_tensor<Real>(3, 4, 2, 2, 5);
    const auto am = oracle::random_tensor<Real>(3, 4, 2, 2, 6, 0.4);
    const auto fo = synthetic_fo(zr, am);
    const auto t1 = score_slices({StrategyKind::random, 42}, fo, AnnotationMask(4), 2);
    const auto t2 = score_slices({StrategyKind::random, 42}, fo, AnnotationMask(4), 2);
    const auto t3 = score_slices({StrategyKind::random, 43}, fo, AnnotationMask(4), 2);
    for (int i = 0; i < 4; ++i) {
        CHECK(t1.scores[i].value == t2.scores[i].value);
        CHECK(t1.scores[i].value >= 0.0);
        CHECK(t1.scores[i].value < 1.0);
    }
    bool any_diff = false;
    for (int i = 0; i < 4; ++i) any_diff |= t1.scores[i].value != t3.scores[i].value;
    CHECK(any_diff);
}

TEST_CASE("equal-interval scores negate the distance to the nearest annotation") {
    const auto zr = oracle::random_tensor<Real>(3, 8, 2, 2, 7);
    const auto am = oracle::random_tensor<Real>(3, 8, 2, 2, 8, 0.4);
    const auto fo = synthetic_fo(zr, am);
    AnnotationMask mask(8);
    mask.annotate(0);
    mask.annotate(7);
    const auto table = score_slices({StrategyKind::equal_interval, 0}, fo, mask, 2);
    const int expected_dist[8] = {0, 1, 2, 3, 3, 2, 1, 0};
    for (int i = 0; i < 8; ++i)
        CHECK(table.scores[i].value == doctest::Approx(-expected_dist[i]));
    // The farthest slices are selected first.
    const auto sel = select_slices(table, mask, 2);
    CHECK(sel == std::vector<int>{3, 4});
}

TEST_CASE("select_slices: frozen sort-and-filter case") {
    ScoreTable table;
    table.scores = {{0, 0.9, MetricTag::p_dsc},
                    {1, 0.2, MetricTag::p_dsc},
                    {2, 0.5, MetricTag::p_dsc},
                    {3, 0.1, MetricTag::p_dsc}};
    AnnotationMask mask(4);
    mask.annotate(0);
    CHECK(select_slices(table, mask, 2) == std::vector<int>{1, 3});
    CHECK(select_slices(table, mask, 0).empty());
    CHECK(select_slices(table, mask, 99) == std::vector<int>{1, 2, 3});  // saturation
}

TEST_CASE("selection stays disjoint from the mask and breaks ties by index") {
    ScoreTable table;
    table.scores = {{0, 0.5, MetricTag::p_dsc},
                    {1, 0.5, MetricTag::p_dsc},
                    {2, 0.5, MetricTag::p_dsc},
                    {3, 0.5, MetricTag::p_dsc}};
    AnnotationMask mask(4);
    mask.annotate(1);
    const auto sel = select_slices(table, mask, 2);
    CHECK(sel == std::vector<int>{0, 2});
    for (int s : sel) CHECK_FALSE(mask.annotated(s));
}

TEST_CASE("consistent class relabeling leaves attention-strategy selection unchanged") {
    // Permute the non-background class channels of both Zr and A; the chosen
    // slice indices must not move (metrics are permutation-invariant).
    const int classes = 4;
    const auto zr = oracle::random_tensor<Real>(classes + 1, 6, 4, 4, 11);
    auto am = oracle::random_tensor<Real>(classes + 1, 6, 4, 4, 12, 0.4);
    for (auto& v : am.v) v = std::abs(v) + 0.05f;
    const auto fo = synthetic_fo(zr, am);
    AnnotationMask mask(6);
    mask.annotate(0);
    const Strategy strat{StrategyKind::attention_paccuracy, 0};
    const auto base = select_slices(score_slices(strat, fo, mask, classes), mask, 2);

    const int perm[5] = {0, 2, 3, 1, 4};  // cycle classes 1..3, keep 0 and U
    Tensor4<Real> zr_p(zr.c, zr.d, zr.h, zr.w), am_p(am.c, am.d, am.h, am.w);
    for (int c = 0; c <= classes; ++c) {
        std::copy(zr.chan(c), zr.chan(c) + zr.spatial(), zr_p.chan(perm[c]));
        std::copy(am.chan(c), am.chan(c) + am.spatial(), am_p.chan(perm[c]));
    }
    const auto fo_p = synthetic_fo(zr_p, am_p);
    const auto permuted = select_slices(score_slices(strat, fo_p, mask, classes), mask, 2);
    CHECK(base == permuted);
}
