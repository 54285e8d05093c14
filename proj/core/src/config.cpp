#include "voxal/config.hpp"

#include <sstream>
#include <stdexcept>

#include "voxal/textio.hpp"

namespace voxal {

void RunConfig::validate() const {
    if (n_train < 1) throw std::runtime_error("config: n_train must be >= 1");
    if (n_test < 0) throw std::runtime_error("config: n_test must be >= 0");
    if (noise_sigma < 0) throw std::runtime_error("config: noise_sigma must be >= 0");
    if (full_train_iters < 0) throw std::runtime_error("config: full_train_iters must be >= 0");
    if (strategies.empty()) throw std::runtime_error("config: strategies must be nonempty");
    for (const std::string& s : strategies) parse_strategy(s, task_classes(task));
    arch.validate();
    loop.validate();
    const int div = arch.divisor();
    if (volume_size.d % div != 0 || volume_size.h % div != 0 || volume_size.w % div != 0)
        throw std::runtime_error("config: volume_size must be divisible by 2^depth");
    if (loop.seed_spacing > static_cast<int>(volume_size.d))
        throw std::runtime_error("config: seed_spacing must be in [1, D]");
}

namespace {

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(value);
    while (std::getline(in, cur, ',')) {
        const std::string t = trim(cur);
        if (!t.empty()) out.push_back(t);
    }
    return out;
}

}  // namespace

RunConfig parse_run_config_text(const std::string& text, const std::string& origin) {
    RunConfig cfg;
    for (const KvEntry& e : parse_kv_text(text, origin)) {
        const std::string where = origin + ":" + std::to_string(e.line) + ": " + e.key;
        try {
            if (e.key == "task") cfg.task = parse_task(e.value);
            else if (e.key == "volume_dim") {
                const auto v = static_cast<std::uint32_t>(parse_int(e.value));
                cfg.volume_size = {v, v, v};
            } else if (e.key == "n_train") cfg.n_train = static_cast<int>(parse_int(e.value));
            else if (e.key == "n_test") cfg.n_test = static_cast<int>(parse_int(e.value));
            else if (e.key == "noise_sigma") cfg.noise_sigma = parse_real(e.value);
            else if (e.key == "base_channels") cfg.arch.base_channels = static_cast<int>(parse_int(e.value));
            else if (e.key == "depth") cfg.arch.depth = static_cast<int>(parse_int(e.value));
            else if (e.key == "cam_reduction") cfg.arch.cam_reduction = static_cast<int>(parse_int(e.value));
            else if (e.key == "attention") cfg.arch.attention = parse_bool(e.value);
            else if (e.key == "learning_rate") cfg.loop.optim.learning_rate = parse_real(e.value);
            else if (e.key == "momentum") cfg.loop.optim.momentum = parse_real(e.value);
            else if (e.key == "weight_decay") cfg.loop.optim.weight_decay = parse_real(e.value);
            else if (e.key == "batch_size") cfg.loop.optim.batch_size = static_cast<int>(parse_int(e.value));
            else if (e.key == "seed_spacing") cfg.loop.seed_spacing = static_cast<int>(parse_int(e.value));
            else if (e.key == "budget_fraction") cfg.loop.budget_fraction = parse_real(e.value);
            else if (e.key == "sigma") cfg.loop.sigma = parse_real(e.value);
            else if (e.key == "max_rounds") cfg.loop.max_rounds = static_cast<int>(parse_int(e.value));
            else if (e.key == "train_iters") cfg.loop.train_iters = static_cast<int>(parse_int(e.value));
            else if (e.key == "full_train_iters") cfg.full_train_iters = static_cast<int>(parse_int(e.value));
            else if (e.key == "resume") cfg.loop.resume = parse_bool(e.value);
            else if (e.key == "strategies") cfg.strategies = split_list(e.value);
            else if (e.key == "output_dir") cfg.output_dir = e.value;
            else if (e.key == "master_seed") cfg.master_seed = parse_uint(e.value);
            else throw std::runtime_error("unknown key");
        } catch (const std::exception& ex) {
            throw std::runtime_error(where + ": " + ex.what());
        }
    }
    return cfg;
}

RunConfig parse_run_config(const std::filesystem::path& path) {
    return parse_run_config_text(read_text_file(path), path.string());
}

std::string format_run_config(const RunConfig& cfg) {
    std::ostringstream out;
    out << "# phantom\n";
    out << "task = " << task_name(cfg.task) << "\n";
    out << "volume_dim = " << cfg.volume_size.d << "\n";
    out << "n_train = " << cfg.n_train << "\n";
    out << "n_test = " << cfg.n_test << "\n";
    out << "noise_sigma = " << fmt_double(cfg.noise_sigma) << "\n";
    out << "# network\n";
    out << "base_channels = " << cfg.arch.base_channels << "\n";
    out << "depth = " << cfg.arch.depth << "\n";
    out << "cam_reduction = " << cfg.arch.cam_reduction << "\n";
    out << "attention = " << (cfg.arch.attention ? "true" : "false") << "\n";
    out << "# optimizer\n";
    out << "learning_rate = " << fmt_double(cfg.loop.optim.learning_rate) << "\n";
    out << "momentum = " << fmt_double(cfg.loop.optim.momentum) << "\n";
    out << "weight_decay = " << fmt_double(cfg.loop.optim.weight_decay) << "\n";
    out << "batch_size = " << cfg.loop.optim.batch_size << "\n";
    out << "# loop\n";
    out << "seed_spacing = " << cfg.loop.seed_spacing << "\n";
    out << "budget_fraction = " << fmt_double(cfg.loop.budget_fraction) << "\n";
    out << "sigma = " << fmt_double(cfg.loop.sigma) << "\n";
    out << "max_rounds = " << cfg.loop.max_rounds << "\n";
    out << "train_iters = " << cfg.loop.train_iters << "\n";
    out << "full_train_iters = " << cfg.full_train_iters << "\n";
    out << "resume = " << (cfg.loop.resume ? "true" : "false") << "\n";
    out << "# harness\n";
    std::string strategies;
    for (const std::string& s : cfg.strategies) {
        if (!strategies.empty()) strategies += ",";
        strategies += s;
    }
    out << "strategies = " << strategies << "\n";
    out << "output_dir = " << cfg.output_dir << "\n";
    out << "master_seed = " << cfg.master_seed << "\n";
    return out.str();
}

}  // namespace voxal
