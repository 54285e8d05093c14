#include "voxal/run_store.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "voxal/checkpoint.hpp"
#include "voxal/textio.hpp"

namespace voxal {

namespace {

std::string round_file(const char* stem, int round, const char* ext) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s_round_%03d%s", stem, round, ext);
    return buf;
}

}  // namespace

void write_run_meta(const std::filesystem::path& dir, const RunMeta& meta) {
    std::ostringstream out;
    out << "strategy = " << meta.strategy << "\n";
    out << "data = " << meta.data_path << "\n";
    out << "full = " << (meta.full ? "true" : "false") << "\n";
    out << "seed = " << meta.seed << "\n";
    write_text_file(dir / "run_meta.txt", out.str());
}

RunMeta read_run_meta(const std::filesystem::path& dir) {
    RunMeta meta;
    for (const KvEntry& e : parse_kv_file(dir / "run_meta.txt")) {
        if (e.key == "strategy") meta.strategy = e.value;
        else if (e.key == "data") meta.data_path = e.value;
        else if (e.key == "full") meta.full = parse_bool(e.value);
        else if (e.key == "seed") meta.seed = parse_uint(e.value);
        else throw std::runtime_error("run_meta.txt: unknown key '" + e.key + "'");
    }
    if (meta.strategy.empty()) throw std::runtime_error("run_meta.txt: missing strategy");
    return meta;
}

void write_history_csv(const std::filesystem::path& path, const LoopHistory& history) {
    std::ostringstream out;
    out << "round,ratio,mean_pseudo,partA_f1,partB_f1,stopped\n";
    for (const RoundRecord& r : history.rounds) {
        out << r.round << ',' << fmt_double(r.ratio) << ',' << fmt_double(r.mean_pseudo) << ','
            << fmt_double(r.part_a_f1) << ',' << fmt_double(r.part_b_f1) << ','
            << (r.stopped ? 1 : 0) << "\n";
    }
    write_text_file(path, out.str());
}

std::vector<HistoryRow> read_history_csv(const std::filesystem::path& path) {
    std::istringstream in(read_text_file(path));
    std::string line;
    if (!std::getline(in, line) || line != "round,ratio,mean_pseudo,partA_f1,partB_f1,stopped")
        throw std::runtime_error(path.string() + ": unexpected history header");
    std::vector<HistoryRow> rows;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        std::istringstream ls(line);
        std::string field;
        HistoryRow row;
        auto next = [&]() {
            if (!std::getline(ls, field, ','))
                throw std::runtime_error(path.string() + ": short history row");
            return field;
        };
        row.round = static_cast<int>(parse_int(next()));
        row.ratio = parse_real(next());
        row.mean_pseudo = parse_real(next());
        row.part_a_f1 = parse_real(next());
        row.part_b_f1 = parse_real(next());
        row.stopped = parse_int(next()) != 0;
        rows.push_back(row);
    }
    if (rows.empty()) throw std::runtime_error(path.string() + ": empty history");
    return rows;
}

void write_selection_csv(const std::filesystem::path& path, const LoopHistory& history) {
    std::ostringstream out;
    out << "volume_id,round,slice_index\n";
    for (const RoundRecord& r : history.rounds)
        for (std::size_t vol = 0; vol < r.selected.size(); ++vol)
            for (int s : r.selected[vol]) out << vol << ',' << r.round << ',' << s << "\n";
    write_text_file(path, out.str());
}

RunWriter::RunWriter(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_ / "checkpoints");
}

void RunWriter::on_round(const RoundRecord& record, const ModelParams<Real>& model,
                         const std::vector<ScoreTable>& tables) {
    std::ostringstream scores;
    scores << "volume_id,slice,metric,value\n";
    for (std::size_t vol = 0; vol < tables.size(); ++vol)
        for (const SliceScore& s : tables[vol].scores)
            scores << vol << ',' << s.slice << ',' << metric_name(s.tag) << ','
                   << fmt_double(s.value) << "\n";
    write_text_file(dir_ / round_file("scores", record.round, ".csv"), scores.str());

    std::ostringstream loss;
    loss << "iteration,loss\n";
    for (std::size_t i = 0; i < record.loss_trace.size(); ++i)
        loss << i << ',' << fmt_double(record.loss_trace[i]) << "\n";
    write_text_file(dir_ / round_file("loss", record.round, ".csv"), loss.str());

    save_model(checkpoint_path(dir_, record.round), model);
}

RunInfo read_run(const std::filesystem::path& dir) {
    RunInfo info;
    info.dir = dir;
    info.config = parse_run_config(dir / "run_config.txt");
    info.meta = read_run_meta(dir);
    info.history = read_history_csv(dir / "history.csv");
    return info;
}

int final_round_index(const std::vector<HistoryRow>& history) {
    return history.back().round;
}

std::filesystem::path checkpoint_path(const std::filesystem::path& dir, int round) {
    return dir / "checkpoints" / round_file("model", round, ".smdl");
}

}  // namespace voxal
