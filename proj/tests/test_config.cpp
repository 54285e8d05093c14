#include <doctest.h>

#include "voxal/config.hpp"

using namespace voxal;

TEST_CASE("defaults describe the desk-scale setup") {
    const RunConfig cfg;
    CHECK(cfg.task == Task::brain);
    CHECK(cfg.volume_size == Dims{32, 32, 32});
    CHECK(cfg.n_train == 8);
    CHECK(cfg.n_test == 4);
    CHECK(cfg.arch.base_channels == 8);
    CHECK(cfg.arch.depth == 1);
    CHECK(cfg.loop.optim.learning_rate == 0.001);
    CHECK(cfg.loop.optim.momentum == 0.9);
    CHECK(cfg.loop.optim.weight_decay == 0.0001);
    CHECK(cfg.loop.optim.batch_size == 2);
    CHECK(cfg.loop.seed_spacing == 16);
    CHECK(cfg.loop.budget_fraction == 0.05);
    CHECK(cfg.loop.sigma == 0.005);
    CHECK(cfg.loop.train_iters == 150);
    CHECK(cfg.loop.resume);
    cfg.validate();
}

TEST_CASE("keys override defaults") {
    const std::string text =
        "task = tissue\n"
        "volume_dim = 16\n"
        "train_iters = 25\n"
        "sigma = 0.01\n"
        "strategies = attention, random\n"
        "master_seed = 99\n";
    const RunConfig cfg = parse_run_config_text(text, "test");
    CHECK(cfg.task == Task::tissue);
    CHECK(cfg.volume_size == Dims{16, 16, 16});
    CHECK(cfg.loop.train_iters == 25);
    CHECK(cfg.loop.sigma == 0.01);
    CHECK(cfg.strategies == std::vector<std::string>{"attention", "random"});
    CHECK(cfg.master_seed == 99);
}

TEST_CASE("unknown keys are rejected with file and line context") {
    CHECK_THROWS_WITH_AS(parse_run_config_text("bogus_key = 1\n", "cfg.txt"),
                         doctest::Contains("cfg.txt:1: bogus_key"), std::runtime_error);
}

TEST_CASE("malformed values name the offending field") {
    CHECK_THROWS_WITH_AS(parse_run_config_text("train_iters = soon\n", "cfg.txt"),
                         doctest::Contains("train_iters"), std::runtime_error);
    CHECK_THROWS_WITH_AS(parse_run_config_text("attention = maybe\n", "cfg.txt"),
                         doctest::Contains("attention"), std::runtime_error);
    CHECK_THROWS_AS(parse_run_config_text("task brain\n", "cfg.txt"), std::runtime_error);
}

TEST_CASE("validation rejects inconsistent settings") {
    RunConfig cfg;
    cfg.loop.sigma = 0.0;
    CHECK_THROWS(cfg.validate());

    RunConfig odd;
    odd.volume_size = {30, 30, 30};
    odd.arch.depth = 2;  // 30 not divisible by 4
    CHECK_THROWS(odd.validate());

    RunConfig spacing;
    spacing.loop.seed_spacing = 64;  // > D = 32
    CHECK_THROWS(spacing.validate());

    RunConfig strat;
    strat.strategies = {"bogus"};
    CHECK_THROWS(strat.validate());
}

TEST_CASE("format/parse round-trip preserves every field") {
    RunConfig cfg;
    cfg.task = Task::tissue;
    cfg.volume_size = {16, 16, 16};
    cfg.n_train = 3;
    cfg.n_test = 2;
    cfg.noise_sigma = 0.07;
    cfg.arch.base_channels = 4;
    cfg.arch.attention = false;
    cfg.loop.train_iters = 44;
    cfg.loop.budget_fraction = 0.1;
    cfg.loop.resume = false;
    cfg.full_train_iters = 77;
    cfg.strategies = {"random", "interval"};
    cfg.master_seed = 1234;

    const RunConfig back = parse_run_config_text(format_run_config(cfg), "echo");
    CHECK(back.task == cfg.task);
    CHECK(back.volume_size == cfg.volume_size);
    CHECK(back.n_train == cfg.n_train);
    CHECK(back.n_test == cfg.n_test);
    CHECK(back.noise_sigma == cfg.noise_sigma);
    CHECK(back.arch.base_channels == cfg.arch.base_channels);
    CHECK(back.arch.attention == cfg.arch.attention);
    CHECK(back.loop.train_iters == cfg.loop.train_iters);
    CHECK(back.loop.budget_fraction == cfg.loop.budget_fraction);
    CHECK(back.loop.resume == cfg.loop.resume);
    CHECK(back.full_train_iters == cfg.full_train_iters);
    CHECK(back.strategies == cfg.strategies);
    CHECK(back.master_seed == cfg.master_seed);
}
