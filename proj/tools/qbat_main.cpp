#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "qbat/experiment.hpp"
#include "qbat/problem.hpp"

namespace {

int cmd_run(const std::string& config_path, unsigned jobs, bool force) {
    try {
        const qbat::ExperimentConfig cfg = qbat::load_config(config_path);
        if (force && std::filesystem::exists(cfg.output_dir)) {
            std::filesystem::remove_all(cfg.output_dir);
        }
        const qbat::ExecutionSummary summary = qbat::execute(cfg, jobs);
        std::printf("executed %d run(s), reused %d from %s\n", summary.runs_executed,
                    summary.runs_skipped, cfg.output_dir.string().c_str());
        for (const auto& failure : summary.failures) {
            std::fprintf(stderr, "cell failed: %s\n", failure.c_str());
        }
        return summary.cells_failed == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}

int cmd_report(const std::string& results_dir) {
    try {
        const auto records = qbat::load_records(results_dir);
        if (records.empty()) {
            std::fprintf(stderr, "error: no records under %s\n", results_dir.c_str());
            return 1;
        }
        const qbat::Report report = qbat::build_report(records);
        std::cout << qbat::format_report_table(report);

        const auto summary_path = std::filesystem::path(results_dir) / "summary.json";
        std::ofstream out(summary_path);
        out << qbat::report_to_json(report).dump(2) << "\n";
        std::printf("machine-readable summary written to %s\n", summary_path.string().c_str());
        return 0;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}

int cmd_plotdata(const std::string& results_dir, const std::string& out_dir) {
    try {
        const auto records = qbat::load_records(results_dir);
        qbat::emit_convergence(records, out_dir);
        std::printf("convergence curves written to %s\n", out_dir.c_str());
        return 0;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}

int cmd_list_problems(std::size_t dimension) {
    for (const auto& p : qbat::suite(dimension)) {
        std::printf("%-12s %4zu [%g, %g] %g\n", p.name.c_str(), p.dim, p.bounds.lower.front(),
                    p.bounds.upper.front(), p.min_value);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"metaheuristic benchmark harness (ba, qba, de, abc)"};
    app.require_subcommand(1);

    std::string config_path;
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    bool force = false;
    auto* run = app.add_subcommand("run", "execute the experiment matrix of a config file");
    run->add_option("config", config_path, "experiment config (JSON)")->required();
    run->add_option("-j,--jobs", jobs, "worker threads over (algorithm, problem) groups");
    run->add_flag("--force", force, "discard previous results instead of resuming");

    std::string report_dir;
    auto* report = app.add_subcommand("report", "summary tables from persisted results");
    report->add_option("results-dir", report_dir, "directory written by `run`")->required();

    std::string plot_results;
    std::string plot_out;
    auto* plot = app.add_subcommand("plotdata", "per-cell mean convergence curves as CSV");
    plot->add_option("results-dir", plot_results, "directory written by `run`")->required();
    plot->add_option("out-dir", plot_out, "destination for the CSV files")->required();

    std::size_t dimension = 10;
    auto* list = app.add_subcommand("list-problems", "the benchmark suite: name, D, bounds, f*");
    list->add_option("-d,--dimension", dimension, "problem dimension");

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) return cmd_run(config_path, jobs, force);
    if (report->parsed()) return cmd_report(report_dir);
    if (plot->parsed()) return cmd_plotdata(plot_results, plot_out);
    if (list->parsed()) return cmd_list_problems(dimension);
    return 1;
}
