#include "voxal/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "voxal/rng.hpp"

namespace voxal {

std::string strategy_name(StrategyKind kind) {
    switch (kind) {
        case StrategyKind::attention_pdsc: return "attention_pdsc";
        case StrategyKind::attention_paccuracy: return "attention_paccuracy";
        case StrategyKind::random: return "random";
        case StrategyKind::equal_interval: return "interval";
        case StrategyKind::uncertainty_entropy: return "uncertainty";
    }
    return "?";
}

StrategyKind parse_strategy(const std::string& name, int num_classes) {
    if (name == "attention")
        return num_classes == 2 ? StrategyKind::attention_pdsc : StrategyKind::attention_paccuracy;
    if (name == "attention_pdsc") return StrategyKind::attention_pdsc;
    if (name == "attention_paccuracy") return StrategyKind::attention_paccuracy;
    if (name == "random") return StrategyKind::random;
    if (name == "interval" || name == "equal_interval") return StrategyKind::equal_interval;
    if (name == "uncertainty" || name == "uncertainty_entropy")
        return StrategyKind::uncertainty_entropy;
    throw std::invalid_argument("unknown strategy '" + name +
                                "' (expected attention, random, interval or uncertainty)");
}

MetricTag task_pseudo_metric(int num_classes) {
    return num_classes == 2 ? MetricTag::p_dsc : MetricTag::p_accuracy;
}

std::vector<double> entropy_slice_sums(const Tensor4<Real>& prob, int num_classes) {
    std::vector<double> sums(static_cast<std::size_t>(prob.d), 0.0);
    const std::size_t per_slice = std::size_t(prob.h) * prob.w;
    const std::size_t spatial = prob.spatial();
    for (int d = 0; d < prob.d; ++d) {
        double acc = 0.0;
        for (std::size_t i = std::size_t(d) * per_slice; i < std::size_t(d + 1) * per_slice; ++i) {
            double norm = 0.0;
            for (int c = 0; c < num_classes; ++c) norm += prob.v[std::size_t(c) * spatial + i];
            if (norm <= 0.0) continue;
            for (int c = 0; c < num_classes; ++c) {
                const double p = prob.v[std::size_t(c) * spatial + i] / norm;
                if (p > 0.0) acc -= p * std::log(p);
            }
        }
        sums[static_cast<std::size_t>(d)] = acc;
    }
    return sums;
}

ScoreTable score_slices(const Strategy& strategy, const ForwardOutput<Real>& fo,
                        const AnnotationMask& mask, int num_classes) {
    const int slices = fo.prob.d;
    if (mask.size() != slices)
        throw std::invalid_argument("score_slices: mask length must equal axial slice count");

    ScoreTable table;
    table.scores.reserve(static_cast<std::size_t>(slices));

    switch (strategy.kind) {
        case StrategyKind::attention_pdsc:
        case StrategyKind::attention_paccuracy: {
            const bool use_dsc = strategy.kind == StrategyKind::attention_pdsc;
            if (use_dsc && num_classes > 2)
                table.warning = "P-DSC requested on a multi-class task; P-accuracy is the "
                                "intended metric";
            const Predictions<Real> pred = predictions(fo, num_classes);
            const MetricTag tag = use_dsc ? MetricTag::p_dsc : MetricTag::p_accuracy;
            for (int i = 0; i < slices; ++i) {
                const double v = use_dsc ? dsc_per_slice(pred.sr1, pred.sr2, i)
                                         : accuracy_per_slice(pred.sr1, pred.sr2, i);
                table.scores.push_back({i, v, tag});
            }
            break;
        }
        case StrategyKind::uncertainty_entropy: {
            const std::vector<double> sums = entropy_slice_sums(fo.prob, num_classes);
            for (int i = 0; i < slices; ++i)
                table.scores.push_back({i, -sums[static_cast<std::size_t>(i)], MetricTag::entropy});
            break;
        }
        case StrategyKind::random: {
            Rng rng(mix_seed(strategy.sub_seed, 0x52414e44ull));  // "RAND"
            for (int i = 0; i < slices; ++i)
                table.scores.push_back({i, rng.uniform01(), MetricTag::random});
            break;
        }
        case StrategyKind::equal_interval: {
            for (int i = 0; i < slices; ++i) {
                int dist = slices;  // no annotation yet: every slice equally far
                for (int j = 0; j < slices; ++j)
                    if (mask.annotated(j)) dist = std::min(dist, std::abs(i - j));
                table.scores.push_back({i, -static_cast<double>(dist), MetricTag::interval});
            }
            break;
        }
    }
    return table;
}

std::vector<int> select_slices(const ScoreTable& table, const AnnotationMask& mask, int budget) {
    if (budget < 0) throw std::invalid_argument("select_slices: negative budget");
    std::vector<const SliceScore*> candidates;
    for (const SliceScore& s : table.scores)
        if (!mask.annotated(s.slice)) candidates.push_back(&s);
    std::sort(candidates.begin(), candidates.end(), [](const SliceScore* a, const SliceScore* b) {
        if (a->value != b->value) return a->value < b->value;
        return a->slice < b->slice;
    });
    const std::size_t take = std::min<std::size_t>(candidates.size(), static_cast<std::size_t>(budget));
    std::vector<int> out;
    out.reserve(take);
    for (std::size_t i = 0; i < take; ++i) out.push_back(candidates[i]->slice);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace voxal
