// voxal: attention-guided active learning for volumetric segmentation on
// synthetic phantoms. Subcommands: gen-data, run, correlate, report.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "voxal/checkpoint.hpp"
#include "voxal/config.hpp"
#include "voxal/manifest.hpp"
#include "voxal/phantom.hpp"
#include "voxal/rank_stats.hpp"
#include "voxal/report.hpp"
#include "voxal/rng.hpp"
#include "voxal/run_store.hpp"
#include "voxal/textio.hpp"
#include "voxal/volume_io.hpp"

namespace fs = std::filesystem;
using namespace voxal;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

std::string numbered(const char* prefix, int i, const char* suffix) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s_%03d_%s.svol", prefix, i, suffix);
    return buf;
}

int cmd_gen_data(const std::string& task_name_arg, int n_train, int n_test, std::uint32_t size,
                 double noise, std::uint64_t seed, const std::string& out) {
    const Task task = parse_task(task_name_arg);
    const fs::path dir(out);
    fs::create_directories(dir);

    DatasetManifest manifest;
    manifest.task = task;
    manifest.num_classes = task_classes(task);
    manifest.seed = seed;

    auto emit = [&](const char* prefix, int index, std::uint64_t tag) {
        PhantomSpec spec;
        spec.task = task;
        spec.size = {size, size, size};
        spec.num_classes = manifest.num_classes;
        spec.noise_sigma = noise;
        spec.seed = mix_seed(seed, tag, static_cast<std::uint64_t>(index));
        auto [vol, labels] = generate_phantom(spec);
        const std::string vol_name = numbered(prefix, index, "vol");
        const std::string lab_name = numbered(prefix, index, "lab");
        write_volume(dir / vol_name, vol);
        write_labels(dir / lab_name, labels);
        return std::make_pair(vol_name, lab_name);
    };
    for (int i = 0; i < n_train; ++i) manifest.train.push_back(emit("partA", i, 0xA));
    for (int i = 0; i < n_test; ++i) manifest.test.push_back(emit("partB", i, 0xB));
    write_manifest(dir / "manifest.txt", manifest);

    std::cout << "wrote " << n_train << " Part A + " << n_test << " Part B volume pairs to " << out
              << "\n";
    return kExitOk;
}

int cmd_run(const std::string& data, const std::string& strategy_arg,
            const std::optional<std::string>& config_path, std::optional<std::uint64_t> seed,
            const std::string& out, bool full, bool no_attention) {
    RunConfig cfg = config_path ? parse_run_config(*config_path) : RunConfig{};
    if (seed) cfg.master_seed = *seed;
    cfg.output_dir = out;
    if (no_attention) cfg.arch.attention = false;

    const Dataset ds = load_dataset(data);
    cfg.task = ds.manifest.task;
    cfg.volume_size = ds.dims();
    cfg.arch.num_classes = ds.num_classes();

    LoopConfig loop = cfg.loop;
    loop.master_seed = cfg.master_seed;
    std::string strategy_name_used = strategy_arg;
    if (full) {
        // Full supervision: every slice seeded, one long training round.
        loop.seed_spacing = 1;
        loop.train_iters = cfg.full_train_iters;
        strategy_name_used = "full";
    }
    cfg.loop = loop;
    cfg.validate();

    // The full arm still scores slices for its history row; nothing is selected.
    const StrategyKind kind =
        parse_strategy(full ? "attention" : strategy_arg, ds.num_classes());

    const fs::path dir(out);
    fs::create_directories(dir);
    write_text_file(dir / "run_config.txt", format_run_config(cfg));
    write_run_meta(dir, {strategy_name_used, data, full, cfg.master_seed});

    RunWriter writer(dir);
    const LoopHistory history = run_al_loop(loop, ds, kind, cfg.arch, &writer);

    write_history_csv(dir / "history.csv", history);
    write_selection_csv(dir / "selection.csv", history);
    for (const std::string& w : history.warnings) std::cerr << "warning: " << w << "\n";

    const RoundRecord& last = history.final_round();
    std::cout << "run complete: " << history.rounds.size() << " rounds, final ratio "
              << fmt_double(last.ratio) << ", Part B F1 " << fmt_double(last.part_b_f1) << "\n";
    return kExitOk;
}

int cmd_correlate(const std::string& run_dir, const std::string& out) {
    const RunInfo info = read_run(run_dir);
    const Dataset ds = load_dataset(info.meta.data_path);
    const int round = final_round_index(info.history);
    const ModelParams<Real> model = load_model(checkpoint_path(info.dir, round));

    const fs::path out_dir(out);
    fs::create_directories(out_dir);
    const bool binary = ds.num_classes() == 2;

    std::ostringstream summary;
    summary << "volume_id,slices,metric,defined,spearman,slope,pearson,note\n";
    for (std::size_t vol = 0; vol < ds.train_volumes.size(); ++vol) {
        const ForwardOutput<Real> fo = forward(model, ds.train_volumes[vol]);
        const Predictions<Real> pred = predictions(fo, ds.num_classes());
        const int slices = static_cast<int>(ds.dims().d);
        if (slices < 3) throw std::runtime_error("correlate: need at least 3 scored slices");

        std::vector<double> real(slices), est(slices);
        for (int s = 0; s < slices; ++s) {
            real[s] = binary ? dsc_per_slice(pred.sr1, ds.train_gt[vol], s)
                             : accuracy_per_slice(pred.sr1, ds.train_gt[vol], s);
            est[s] = binary ? dsc_per_slice(pred.sr1, pred.sr2, s)
                            : accuracy_per_slice(pred.sr1, pred.sr2, s);
        }
        const RankCorrelation rc = rank_correlation(est, real);

        std::ostringstream rows;
        rows << "slice,real,estimate,rank_real,rank_estimate\n";
        for (int s = 0; s < slices; ++s)
            rows << s << ',' << fmt_double(real[s]) << ',' << fmt_double(est[s]) << ','
                 << fmt_double(rc.rank_real[s]) << ',' << fmt_double(rc.rank_est[s]) << "\n";
        char name[64];
        std::snprintf(name, sizeof(name), "correlate_vol_%03d.csv", static_cast<int>(vol));
        write_text_file(out_dir / name, rows.str());

        summary << vol << ',' << slices << ',' << (binary ? "dsc" : "accuracy") << ','
                << (rc.defined ? 1 : 0) << ',' << fmt_double(rc.spearman) << ','
                << fmt_double(rc.slope) << ',' << fmt_double(rc.pearson) << ','
                << (rc.defined ? "" : "undefined correlation") << "\n";
    }
    write_text_file(out_dir / "correlation.csv", summary.str());
    std::cout << "correlation report written to " << out << "\n";
    return kExitOk;
}

int cmd_report(const std::vector<std::string>& run_dirs, const std::string& out) {
    std::vector<RunInfo> runs;
    runs.reserve(run_dirs.size());
    for (const std::string& dir : run_dirs) runs.push_back(read_run(dir));
    const Report report = build_report(runs);
    write_report(out, report);
    std::cout << "report written to " << out << " (" << report.strategy_table.size()
              << " strategy rows, " << report.ablation_table.size() << " ablation rows)\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"attention-guided active learning for volumetric segmentation"};
    app.require_subcommand(1);

    // gen-data
    auto* gen = app.add_subcommand("gen-data", "generate a synthetic phantom dataset");
    std::string gen_task = "brain", gen_out;
    int gen_train = 8, gen_test = 4;
    std::uint32_t gen_size = 32;
    double gen_noise = 0.05;
    std::uint64_t gen_seed = 1;
    gen->add_option("--task", gen_task, "brain | tissue");
    gen->add_option("--n-train", gen_train, "Part A volume count");
    gen->add_option("--n-test", gen_test, "Part B volume count");
    gen->add_option("--size", gen_size, "cubic volume dimension");
    gen->add_option("--noise", gen_noise, "intensity noise sigma");
    gen->add_option("--seed", gen_seed, "generation seed");
    gen->add_option("--out", gen_out, "output directory")->required();

    // run
    auto* run = app.add_subcommand("run", "train with a query strategy (or full supervision)");
    std::string run_data, run_strategy, run_out;
    std::optional<std::string> run_config;
    std::optional<std::uint64_t> run_seed;
    bool run_full = false, run_no_attention = false;
    run->add_option("--data", run_data, "dataset manifest path")->required();
    run->add_option("--strategy", run_strategy, "attention | random | interval | uncertainty");
    run->add_option("--config", run_config, "run configuration file");
    run->add_option("--seed", run_seed, "master seed (overrides config)");
    run->add_option("--out", run_out, "run directory")->required();
    run->add_flag("--full", run_full, "full supervision (every slice annotated)");
    run->add_flag("--no-attention", run_no_attention, "identity-attention ablation arm");

    // correlate
    auto* corr = app.add_subcommand("correlate", "pseudo-vs-real per-slice quality analysis");
    std::string corr_run, corr_out;
    corr->add_option("--run", corr_run, "completed run directory")->required();
    corr->add_option("--out", corr_out, "output directory")->required();

    // report
    auto* rep = app.add_subcommand("report", "strategy comparison tables and curves");
    std::vector<std::string> rep_runs;
    std::string rep_out;
    rep->add_option("--runs", rep_runs, "completed run directories")->required()->expected(-1);
    rep->add_option("--out", rep_out, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help() << "\n";
        return kExitUsage;
    }

    try {
        if (gen->parsed())
            return cmd_gen_data(gen_task, gen_train, gen_test, gen_size, gen_noise, gen_seed, gen_out);
        if (run->parsed()) {
            if (!run_full && run_strategy.empty()) {
                std::cerr << "run: --strategy is required unless --full is given\n\n"
                          << run->help() << "\n";
                return kExitUsage;
            }
            return cmd_run(run_data, run_strategy, run_config, run_seed, run_out, run_full,
                           run_no_attention);
        }
        if (corr->parsed()) return cmd_correlate(corr_run, corr_out);
        if (rep->parsed()) return cmd_report(rep_runs, rep_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}
