#include "voxal/loop.hpp"

#include <cmath>
#include <stdexcept>

#include "voxal/rng.hpp"

namespace voxal {

namespace {
// Sub-seed tags for the independent random streams of one run.
constexpr std::uint64_t kTagInit = 1;
constexpr std::uint64_t kTagTrain = 2;
constexpr std::uint64_t kTagQuery = 3;
}  // namespace

void LoopConfig::validate() const {
    if (seed_spacing < 1) throw std::invalid_argument("loop: seed_spacing must be >= 1");
    if (budget_fraction <= 0.0 || budget_fraction > 1.0)
        throw std::invalid_argument("loop: budget_fraction must be in (0, 1]");
    if (sigma <= 0.0) throw std::invalid_argument("loop: sigma must be > 0");
    if (max_rounds < 1) throw std::invalid_argument("loop: max_rounds must be >= 1");
    if (train_iters < 0) throw std::invalid_argument("loop: train_iters must be >= 0");
}

bool stopping_check(std::optional<double> prev_mean, double cur_mean, double sigma) {
    if (!prev_mean.has_value()) return false;
    return std::abs(cur_mean - *prev_mean) < sigma;
}

const RoundRecord& LoopHistory::round_at_ratio(double target) const {
    for (const RoundRecord& r : rounds)
        if (r.ratio >= target) return r;
    return rounds.back();
}

LoopHistory run_al_loop(const LoopConfig& config, const Dataset& data, StrategyKind strategy,
                        const ArchConfig& arch, LoopObserver* observer) {
    config.validate();
    arch.validate();
    if (arch.num_classes != data.num_classes())
        throw std::invalid_argument("loop: arch num_classes must match the dataset");

    const int slices = static_cast<int>(data.dims().d);
    const std::size_t n_train = data.train_volumes.size();
    const int budget = static_cast<int>(std::ceil(config.budget_fraction * slices));
    const MetricTag pseudo_tag = task_pseudo_metric(arch.num_classes);
    const std::vector<double> class_weights = default_class_weights(arch.num_classes);

    std::vector<AnnotationMask> masks(n_train, seed_equal_interval(slices, config.seed_spacing));

    ModelParams<Real> model = init_params<Real>(arch, mix_seed(config.master_seed, kTagInit));
    OptimizerState<Real> opt;
    opt.hyper = config.optim;
    opt.init(model);

    LoopHistory history;
    std::optional<double> prev_mean;
    Cache<Real> eval_cache;  // reused; forward() without cache is allocation-heavy

    for (int round = 0; round < config.max_rounds; ++round) {
        RoundRecord rec;
        rec.round = round;
        rec.ratio = masks.front().ratio();

        // (2) simulated expert annotation on the current masks
        std::vector<LabelVolume> sparse;
        sparse.reserve(n_train);
        for (std::size_t i = 0; i < n_train; ++i) sparse.push_back(reveal_annotation(data.train_gt[i], masks[i]));

        // (3) fine-tune (or retrain from a fresh seed when resume is off)
        if (!config.resume && round > 0) {
            model = init_params<Real>(arch, mix_seed(config.master_seed, kTagInit, round));
            opt.init(model);
        }
        TrainTrace trace = train_round(model, data.train_volumes, sparse, config.train_iters, opt,
                                       mix_seed(config.master_seed, kTagTrain, round), class_weights);
        rec.loss_trace = std::move(trace.losses);

        // (4) score, select, grow masks; (5) stopping statistic over ALL slices
        double pseudo_sum = 0.0;
        double f1_a = 0.0;
        std::vector<ScoreTable> tables(n_train);
        rec.selected.resize(n_train);
        bool any_selected = false;
        for (std::size_t i = 0; i < n_train; ++i) {
            const ForwardOutput<Real> fo = forward(model, data.train_volumes[i], &eval_cache);
            Strategy strat{strategy,
                           mix_seed(config.master_seed, kTagQuery, static_cast<std::uint64_t>(i),
                                    static_cast<std::uint64_t>(round))};
            tables[i] = score_slices(strat, fo, masks[i], arch.num_classes);
            if (!tables[i].warning.empty()) history.warnings.push_back(tables[i].warning);

            const Predictions<Real> pred = predictions(fo, arch.num_classes);
            for (int s = 0; s < slices; ++s)
                pseudo_sum += pseudo_tag == MetricTag::p_dsc
                                  ? dsc_per_slice(pred.sr1, pred.sr2, s)
                                  : accuracy_per_slice(pred.sr1, pred.sr2, s);
            f1_a += volume_f1(pred.sr1, data.train_gt[i]);

            rec.selected[i] = select_slices(tables[i], masks[i], budget);
            for (int s : rec.selected[i]) masks[i].annotate(s);
            any_selected = any_selected || !rec.selected[i].empty();
        }
        rec.mean_pseudo = pseudo_sum / (static_cast<double>(n_train) * slices);
        rec.part_a_f1 = f1_a / static_cast<double>(n_train);

        double f1_b = 0.0;
        for (std::size_t i = 0; i < data.test_volumes.size(); ++i) {
            const ForwardOutput<Real> fo = forward(model, data.test_volumes[i], &eval_cache);
            f1_b += volume_f1(argmax_labels(fo.zr, arch.num_classes), data.test_gt[i]);
        }
        rec.part_b_f1 =
            data.test_volumes.empty() ? 0.0 : f1_b / static_cast<double>(data.test_volumes.size());

        rec.stopped = stopping_check(prev_mean, rec.mean_pseudo, config.sigma);
        prev_mean = rec.mean_pseudo;

        if (observer != nullptr) observer->on_round(rec, model, tables);
        history.rounds.push_back(std::move(rec));

        if (history.rounds.back().stopped) break;
        if (!any_selected) break;  // everything annotated
    }
    return history;
}

}  // namespace voxal
