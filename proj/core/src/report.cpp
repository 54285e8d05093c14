#include "voxal/report.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "voxal/svg.hpp"
#include "voxal/textio.hpp"

namespace voxal {

namespace {

double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double sample_std(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    const double m = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

}  // namespace

Report build_report(const std::vector<RunInfo>& runs) {
    if (runs.empty()) throw std::runtime_error("report: no runs");
    const Task task = runs.front().config.task;
    for (const RunInfo& r : runs)
        if (r.config.task != task)
            throw std::runtime_error("report: mixed tasks across runs (" + r.dir.string() + ")");

    Report rep;

    // (strategy, ratio) -> per-seed F1 samples. Ratios of one strategy arm are
    // identical across seeds by construction, so exact keying is safe.
    std::map<std::pair<std::string, double>, std::pair<std::vector<double>, std::vector<double>>>
        cells;
    std::map<bool, std::pair<std::vector<double>, std::vector<double>>> ablation;
    std::vector<double> full_ref;

    for (const RunInfo& r : runs) {
        if (r.meta.full) {
            auto& cell = ablation[r.config.arch.attention];
            const HistoryRow& last = r.history.back();
            cell.first.push_back(last.part_a_f1);
            cell.second.push_back(last.part_b_f1);
            if (r.config.arch.attention) full_ref.push_back(last.part_b_f1);
            continue;
        }
        for (const HistoryRow& row : r.history) {
            auto& cell = cells[{r.meta.strategy, row.ratio}];
            cell.first.push_back(row.part_a_f1);
            cell.second.push_back(row.part_b_f1);
        }
    }

    for (const auto& [key, samples] : cells) {
        StrategyCell c;
        c.strategy = key.first;
        c.ratio = key.second;
        c.seeds = static_cast<int>(samples.first.size());
        c.part_a_mean = mean(samples.first);
        c.part_a_std = sample_std(samples.first);
        c.part_b_mean = mean(samples.second);
        c.part_b_std = sample_std(samples.second);
        rep.strategy_table.push_back(std::move(c));
    }
    std::sort(rep.strategy_table.begin(), rep.strategy_table.end(),
              [](const StrategyCell& a, const StrategyCell& b) {
                  if (a.strategy != b.strategy) return a.strategy < b.strategy;
                  return a.ratio < b.ratio;
              });

    for (const auto& [attention, samples] : ablation) {
        AblationCell c;
        c.attention = attention;
        c.seeds = static_cast<int>(samples.first.size());
        c.part_a_mean = mean(samples.first);
        c.part_b_mean = mean(samples.second);
        rep.ablation_table.push_back(c);
    }
    if (!full_ref.empty()) {
        rep.has_full_reference = true;
        rep.full_part_b_mean = mean(full_ref);
    }
    return rep;
}

void write_report(const std::filesystem::path& out_dir, const Report& report) {
    std::filesystem::create_directories(out_dir);

    std::ostringstream table;
    table << "strategy,ratio,seeds,partA_mean,partA_std,partB_mean,partB_std\n";
    for (const StrategyCell& c : report.strategy_table)
        table << c.strategy << ',' << fmt_double(c.ratio) << ',' << c.seeds << ','
              << fmt_double(c.part_a_mean) << ',' << fmt_double(c.part_a_std) << ','
              << fmt_double(c.part_b_mean) << ',' << fmt_double(c.part_b_std) << "\n";
    write_text_file(out_dir / "strategies.csv", table.str());

    std::ostringstream abl;
    abl << "model,seeds,partA_mean,partB_mean\n";
    for (const AblationCell& c : report.ablation_table)
        abl << (c.attention ? "attention" : "identity_attention") << ',' << c.seeds << ','
            << fmt_double(c.part_a_mean) << ',' << fmt_double(c.part_b_mean) << "\n";
    write_text_file(out_dir / "ablation.csv", abl.str());

    auto chart_for = [&](bool part_b) {
        SvgChart chart;
        chart.title = part_b ? "Part B F1 vs annotation ratio" : "Part A F1 vs annotation ratio";
        chart.x_label = "annotation ratio";
        chart.y_label = "F1";
        std::map<std::string, SvgSeries> by_strategy;
        for (const StrategyCell& c : report.strategy_table) {
            SvgSeries& s = by_strategy[c.strategy];
            s.label = c.strategy;
            s.points.emplace_back(c.ratio, part_b ? c.part_b_mean : c.part_a_mean);
        }
        for (auto& [name, series] : by_strategy) chart.series.push_back(std::move(series));
        if (part_b && report.has_full_reference)
            chart.hlines.emplace_back(report.full_part_b_mean, "full annotation");
        return chart;
    };
    write_text_file(out_dir / "curves_partB.svg", render_line_chart(chart_for(true)));
    write_text_file(out_dir / "curves_partA.svg", render_line_chart(chart_for(false)));
}

}  // namespace voxal
