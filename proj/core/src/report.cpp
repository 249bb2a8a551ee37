#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "qbat/experiment.hpp"

namespace qbat {

namespace {

constexpr double kAlpha = 0.05;

// Canonical ordering for tables: suite order for problems, fixed id order
// for algorithms, anything unknown after that alphabetically.
int problem_order(const std::string& name) {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& p : suite(2)) out.push_back(p.name);
        return out;
    }();
    const auto it = std::find(names.begin(), names.end(), name);
    return it == names.end() ? static_cast<int>(names.size()) : static_cast<int>(it - names.begin());
}

int algorithm_order(const std::string& name) {
    static const std::vector<std::string> names = {"ba", "qba", "de", "abc"};
    const auto it = std::find(names.begin(), names.end(), name);
    return it == names.end() ? static_cast<int>(names.size()) : static_cast<int>(it - names.begin());
}

template <class Key>
std::vector<Key> sorted_keys(const std::map<Key, std::vector<const RunRecord*>>& m,
                             int (*order)(const std::string&)) {
    std::vector<Key> keys;
    for (const auto& [k, v] : m) keys.push_back(k);
    std::sort(keys.begin(), keys.end(), [&](const Key& a, const Key& b) {
        const int oa = order(a);
        const int ob = order(b);
        return oa != ob ? oa < ob : a < b;
    });
    return keys;
}

} // namespace

Report build_report(std::span<const RunRecord> records) {
    if (records.empty()) {
        throw std::invalid_argument("build_report: no records");
    }

    std::map<std::string, std::map<std::string, std::vector<const RunRecord*>>> by_problem;
    for (const auto& rec : records) {
        by_problem[rec.problem][rec.algorithm].push_back(&rec);
    }

    Report report;
    std::vector<std::string> problems;
    for (const auto& [p, _] : by_problem) problems.push_back(p);
    std::sort(problems.begin(), problems.end(), [](const std::string& a, const std::string& b) {
        const int oa = problem_order(a);
        const int ob = problem_order(b);
        return oa != ob ? oa < ob : a < b;
    });

    for (const auto& problem : problems) {
        auto& algos = by_problem[problem];
        ProblemReport pr;
        pr.problem = problem;

        const auto algo_names = sorted_keys(algos, algorithm_order);
        for (const auto& name : algo_names) {
            std::vector<double> finals;
            for (const auto* rec : algos[name]) finals.push_back(rec->final_fitness);
            CellReport cell;
            cell.algorithm = name;
            cell.encoding = algos[name].front()->encoding;
            cell.final_fitness = summarize(finals);
            pr.cells.push_back(std::move(cell));
        }

        if (algos.contains("qba")) {
            std::vector<double> qba_finals;
            for (const auto* rec : algos["qba"]) qba_finals.push_back(rec->final_fitness);
            for (const auto& name : algo_names) {
                if (name == "qba") continue;
                std::vector<double> other;
                for (const auto* rec : algos[name]) other.push_back(rec->final_fitness);

                const TestResult t = ranksum(qba_finals, other);
                PairwiseReport pw;
                pw.algorithm = name;
                pw.p_value = t.p_value;
                pw.method = t.method;
                // Lower fitness means lower ranks, so qba leads when its
                // rank sum falls below the null expectation.
                const double expected =
                    static_cast<double>(qba_finals.size()) *
                    static_cast<double>(qba_finals.size() + other.size() + 1) / 2.0;
                if (t.p_value < kAlpha && t.statistic < expected) {
                    pw.mark = 'w';
                    ++report.qba_wins;
                } else if (t.p_value < kAlpha && t.statistic > expected) {
                    pw.mark = 'l';
                    ++report.qba_losses;
                } else {
                    pw.mark = 't';
                    ++report.qba_ties;
                }
                pr.qba_vs.push_back(std::move(pw));
            }
        }
        report.problems.push_back(std::move(pr));
    }
    return report;
}

std::string format_report_table(const Report& report) {
    std::ostringstream out;
    char line[256];
    std::snprintf(line, sizeof(line), "%-12s %-5s %-18s %13s %13s %13s %13s %13s\n", "problem",
                  "algo", "encoding", "mean", "std", "median", "best", "worst");
    out << line;
    out << std::string(12 + 1 + 5 + 1 + 18 + 1 + 5 * 14, '-') << "\n";

    for (const auto& pr : report.problems) {
        for (const auto& cell : pr.cells) {
            std::snprintf(line, sizeof(line), "%-12s %-5s %-18s %13.6g %13.6g %13.6g %13.6g %13.6g\n",
                          pr.problem.c_str(), cell.algorithm.c_str(),
                          std::string(to_string(cell.encoding)).c_str(), cell.final_fitness.mean,
                          cell.final_fitness.stddev, cell.final_fitness.median,
                          cell.final_fitness.best, cell.final_fitness.worst);
            out << line;
        }
        for (const auto& pw : pr.qba_vs) {
            const char* verdict = pw.mark == 'w' ? "win" : pw.mark == 'l' ? "loss" : "tie";
            std::snprintf(line, sizeof(line), "%-12s qba vs %-5s p=%-12.4g %-14s -> %s\n",
                          pr.problem.c_str(), pw.algorithm.c_str(), pw.p_value, pw.method.c_str(),
                          verdict);
            out << line;
        }
    }
    std::snprintf(line, sizeof(line), "qba pairwise totals: %d win / %d tie / %d loss\n",
                  report.qba_wins, report.qba_ties, report.qba_losses);
    out << line;
    return out.str();
}

nlohmann::json report_to_json(const Report& report) {
    nlohmann::json j;
    j["alpha"] = kAlpha;
    j["qba_wins"] = report.qba_wins;
    j["qba_ties"] = report.qba_ties;
    j["qba_losses"] = report.qba_losses;
    nlohmann::json problems = nlohmann::json::array();
    for (const auto& pr : report.problems) {
        nlohmann::json p;
        p["problem"] = pr.problem;
        nlohmann::json cells = nlohmann::json::array();
        for (const auto& cell : pr.cells) {
            cells.push_back({{"algorithm", cell.algorithm},
                             {"encoding", std::string(to_string(cell.encoding))},
                             {"runs", cell.final_fitness.count},
                             {"mean", cell.final_fitness.mean},
                             {"std", cell.final_fitness.stddev},
                             {"median", cell.final_fitness.median},
                             {"best", cell.final_fitness.best},
                             {"worst", cell.final_fitness.worst}});
        }
        p["cells"] = std::move(cells);
        nlohmann::json pairwise = nlohmann::json::array();
        for (const auto& pw : pr.qba_vs) {
            pairwise.push_back({{"baseline", pw.algorithm},
                                {"p_value", pw.p_value},
                                {"method", pw.method},
                                {"mark", std::string(1, pw.mark)}});
        }
        p["qba_vs"] = std::move(pairwise);
        problems.push_back(std::move(p));
    }
    j["problems"] = std::move(problems);
    return j;
}

void emit_convergence(std::span<const RunRecord> records, const std::filesystem::path& out_dir) {
    if (records.empty()) {
        throw std::invalid_argument("emit_convergence: no records");
    }
    std::filesystem::create_directories(out_dir);

    std::map<std::pair<std::string, std::string>, std::vector<const RunRecord*>> cells;
    for (const auto& rec : records) {
        cells[{rec.algorithm, rec.problem}].push_back(&rec);
    }

    for (const auto& [key, runs] : cells) {
        std::size_t rows = std::numeric_limits<std::size_t>::max();
        for (const auto* rec : runs) {
            if (rec->trace.empty()) {
                throw std::invalid_argument("emit_convergence: run of " + key.first + "/" +
                                            key.second + " has no checkpoints");
            }
            rows = std::min(rows, rec->trace.size());
        }

        const auto path = out_dir / (key.first + "__" + key.second + ".csv");
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write " + path.string());
        out << "evaluations,mean_best_fitness\n";
        char line[64];
        for (std::size_t i = 0; i < rows; ++i) {
            const long evals = runs.front()->trace[i].first;
            double sum = 0.0;
            for (const auto* rec : runs) {
                if (rec->trace[i].first != evals) {
                    throw std::invalid_argument("emit_convergence: checkpoint cadence mismatch in " +
                                                key.first + "/" + key.second);
                }
                sum += rec->trace[i].second;
            }
            std::snprintf(line, sizeof(line), "%ld,%.17g\n", evals,
                          sum / static_cast<double>(runs.size()));
            out << line;
        }
    }
}

} // namespace qbat
