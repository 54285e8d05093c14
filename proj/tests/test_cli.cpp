// End-to-end checks of the command-line surface. The binary path arrives in
// VOXAL_CLI (set by ctest); the tests are skipped when it is absent.

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>

#include "voxal/textio.hpp"

namespace fs = std::filesystem;

namespace {

const char* cli_path() { return std::getenv("VOXAL_CLI"); }

struct CmdResult {
    int exit_code = -1;
    std::string output;  // stdout + stderr
};

CmdResult run_cli(const std::string& args) {
    const fs::path log = fs::temp_directory_path() / "voxal_cli_tests" / "last_output.txt";
    fs::create_directories(log.parent_path());
    const std::string cmd = std::string(cli_path()) + " " + args + " > " + log.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    CmdResult res;
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    res.output = voxal::read_text_file(log);
    return res;
}

fs::path fresh_dir(const char* name) {
    const fs::path dir = fs::temp_directory_path() / "voxal_cli_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

// name -> file bytes for every regular file under root.
std::map<std::string, std::string> tree_bytes(const fs::path& root) {
    std::map<std::string, std::string> out;
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
        if (!entry.is_regular_file()) continue;
        std::ifstream in(entry.path(), std::ios::binary);
        out[fs::relative(entry.path(), root).string()] =
            std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    }
    return out;
}

std::string tiny_config(const fs::path& dir) {
    const fs::path cfg = dir / "config.txt";
    voxal::write_text_file(cfg,
                           "volume_dim = 16\n"
                           "base_channels = 4\n"
                           "seed_spacing = 8\n"
                           "budget_fraction = 0.25\n"
                           "max_rounds = 2\n"
                           "train_iters = 4\n"
                           "full_train_iters = 6\n"
                           "sigma = 0.000001\n");
    return cfg.string();
}

}  // namespace

TEST_CASE("gen-data writes the advertised file count") {
    if (!cli_path()) return;  // not running under ctest
    const fs::path out = fresh_dir("gen");
    const auto res = run_cli("gen-data --task brain --n-train 8 --n-test 4 --size 16 --seed 5 --out " +
                             out.string());
    CHECK(res.exit_code == 0);
    std::size_t svol = 0;
    for (const auto& e : fs::directory_iterator(out)) svol += e.path().extension() == ".svol";
    CHECK(svol == 24);  // image + label per volume
    CHECK(fs::exists(out / "manifest.txt"));
}

TEST_CASE("missing required flags exit 2 with usage text") {
    if (!cli_path()) return;
    const auto res = run_cli("gen-data --task brain");
    CHECK(res.exit_code == 2);
    CHECK(res.output.find("--out") != std::string::npos);
    CHECK(res.output.find("Usage") != std::string::npos);
}

TEST_CASE("unknown subcommands and strategies fail cleanly") {
    if (!cli_path()) return;
    CHECK(run_cli("frobnicate").exit_code == 2);

    const fs::path data = fresh_dir("badstrat_data");
    REQUIRE(run_cli("gen-data --n-train 1 --n-test 0 --size 16 --seed 1 --out " + data.string())
                .exit_code == 0);
    const fs::path out = fresh_dir("badstrat_run");
    const auto res = run_cli("run --data " + (data / "manifest.txt").string() +
                             " --strategy bogus --out " + out.string());
    CHECK(res.exit_code == 1);
    CHECK(res.output.find("unknown strategy") != std::string::npos);
}

TEST_CASE("run requires a strategy unless --full is given") {
    if (!cli_path()) return;
    const fs::path data = fresh_dir("nostrat_data");
    REQUIRE(run_cli("gen-data --n-train 1 --n-test 0 --size 16 --seed 1 --out " + data.string())
                .exit_code == 0);
    const auto res = run_cli("run --data " + (data / "manifest.txt").string() + " --out /tmp/x");
    CHECK(res.exit_code == 2);
}

TEST_CASE("gen-data is byte-identical across reruns with equal flags") {
    if (!cli_path()) return;
    const fs::path a = fresh_dir("det_a"), b = fresh_dir("det_b");
    const std::string flags = "gen-data --task tissue --n-train 2 --n-test 1 --size 16 --seed 9 --out ";
    REQUIRE(run_cli(flags + a.string()).exit_code == 0);
    REQUIRE(run_cli(flags + b.string()).exit_code == 0);
    CHECK(tree_bytes(a) == tree_bytes(b));
}

TEST_CASE("run + correlate + report round-trip on a miniature dataset") {
    if (!cli_path()) return;
    const fs::path data = fresh_dir("mini_data");
    REQUIRE(run_cli("gen-data --task brain --n-train 2 --n-test 1 --size 16 --seed 3 --out " +
                    data.string())
                .exit_code == 0);
    const std::string manifest = (data / "manifest.txt").string();
    const std::string cfg = tiny_config(fresh_dir("mini_cfg"));

    const fs::path run_attn = fresh_dir("mini_attn");
    auto res = run_cli("run --data " + manifest + " --strategy attention --config " + cfg +
                       " --seed 1 --out " + run_attn.string());
    CAPTURE(res.output);
    REQUIRE(res.exit_code == 0);
    CHECK(fs::exists(run_attn / "history.csv"));
    CHECK(fs::exists(run_attn / "selection.csv"));
    CHECK(fs::exists(run_attn / "scores_round_000.csv"));
    CHECK(fs::exists(run_attn / "loss_round_000.csv"));
    CHECK(fs::exists(run_attn / "checkpoints" / "model_round_000.smdl"));

    // Interval seeding on K=8, D=16 trains round 0 at ratio 1/8.
    const std::string history = voxal::read_text_file(run_attn / "history.csv");
    CHECK(history.find("0,0.125,") != std::string::npos);

    const fs::path run_full = fresh_dir("mini_full");
    res = run_cli("run --data " + manifest + " --config " + cfg + " --seed 1 --full --out " +
                  run_full.string());
    REQUIRE(res.exit_code == 0);
    const std::string full_history = voxal::read_text_file(run_full / "history.csv");
    CHECK(full_history.find("0,1,") != std::string::npos);  // ratio 1.0 from round 0
    // No selections in the full arm.
    CHECK(voxal::read_text_file(run_full / "selection.csv") == "volume_id,round,slice_index\n");

    const fs::path corr = fresh_dir("mini_corr");
    res = run_cli("correlate --run " + run_attn.string() + " --out " + corr.string());
    CAPTURE(res.output);
    REQUIRE(res.exit_code == 0);
    CHECK(fs::exists(corr / "correlation.csv"));
    CHECK(fs::exists(corr / "correlate_vol_000.csv"));

    const fs::path rep = fresh_dir("mini_report");
    res = run_cli("report --runs " + run_attn.string() + " " + run_full.string() + " --out " +
                  rep.string());
    CAPTURE(res.output);
    REQUIRE(res.exit_code == 0);
    CHECK(fs::exists(rep / "strategies.csv"));
    CHECK(fs::exists(rep / "ablation.csv"));
    CHECK(fs::exists(rep / "curves_partB.svg"));
}

TEST_CASE("attention runs on the tissue task score with p_accuracy") {
    if (!cli_path()) return;
    const fs::path data = fresh_dir("tissue_data");
    REQUIRE(run_cli("gen-data --task tissue --n-train 1 --n-test 0 --size 16 --seed 2 --out " +
                    data.string())
                .exit_code == 0);
    const std::string cfg = tiny_config(fresh_dir("tissue_cfg"));
    const fs::path run_dir = fresh_dir("tissue_run");
    const auto res = run_cli("run --data " + (data / "manifest.txt").string() +
                             " --strategy attention --config " + cfg + " --seed 1 --out " +
                             run_dir.string());
    CAPTURE(res.output);
    REQUIRE(res.exit_code == 0);
    const std::string scores = voxal::read_text_file(run_dir / "scores_round_000.csv");
    CHECK(scores.find("p_accuracy") != std::string::npos);
    CHECK(scores.find("p_dsc") == std::string::npos);
}
