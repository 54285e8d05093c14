#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "voxal/config.hpp"
#include "voxal/loop.hpp"

namespace voxal {

// On-disk layout of one run directory:
//   run_config.txt        resolved configuration echo
//   run_meta.txt          strategy, dataset path, arm flags
//   history.csv           round,ratio,mean_pseudo,partA_f1,partB_f1,stopped
//   selection.csv         volume_id,round,slice_index
//   scores_round_NNN.csv  volume_id,slice,metric,value
//   loss_round_NNN.csv    iteration,loss
//   checkpoints/model_round_NNN.smdl

struct RunMeta {
    std::string strategy;  // requested name, or "full" for the supervision arm
    std::string data_path;
    bool full = false;
    std::uint64_t seed = 0;
};

void write_run_meta(const std::filesystem::path& dir, const RunMeta& meta);
RunMeta read_run_meta(const std::filesystem::path& dir);

struct HistoryRow {
    int round = 0;
    double ratio = 0.0;
    double mean_pseudo = 0.0;
    double part_a_f1 = 0.0;
    double part_b_f1 = 0.0;
    bool stopped = false;
};

void write_history_csv(const std::filesystem::path& path, const LoopHistory& history);
std::vector<HistoryRow> read_history_csv(const std::filesystem::path& path);

void write_selection_csv(const std::filesystem::path& path, const LoopHistory& history);

// Observer that materializes per-round artifacts while the loop runs.
class RunWriter : public LoopObserver {
  public:
    explicit RunWriter(std::filesystem::path dir);
    void on_round(const RoundRecord& record, const ModelParams<Real>& model,
                  const std::vector<ScoreTable>& tables) override;

  private:
    std::filesystem::path dir_;
};

// Everything report/correlate need from a completed run.
struct RunInfo {
    std::filesystem::path dir;
    RunConfig config;
    RunMeta meta;
    std::vector<HistoryRow> history;
};

RunInfo read_run(const std::filesystem::path& dir);

int final_round_index(const std::vector<HistoryRow>& history);
std::filesystem::path checkpoint_path(const std::filesystem::path& dir, int round);

}  // namespace voxal
