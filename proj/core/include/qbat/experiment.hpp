#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "qbat/algorithm.hpp"
#include "qbat/stats.hpp"

namespace qbat {

/// One algorithm entry of an experiment. When encoding is empty the runner
/// picks the mode per problem (only meaningful for qba, see
/// default_qba_encoding).
struct AlgorithmSpec {
    AlgorithmId id = AlgorithmId::Ba;
    AlgoConfig config;
    std::optional<EncodingMode> encoding; // nullopt: choose per problem
};

struct ExperimentConfig {
    std::vector<AlgorithmSpec> algorithms;
    std::vector<std::string> problems; // resolved names, suite order
    std::size_t dimension = 10;
    int runs_per_cell = 25;
    std::uint64_t base_seed = 1;
    std::filesystem::path output_dir = "results";
};

/// Parses and validates an experiment config. Defaults: 25 runs per cell,
/// base seed 1, output directory "results", per-algorithm defaults as in
/// AlgoConfig. Unknown keys and unknown algorithm/problem names are
/// rejected with the offending field named in the error.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::filesystem::path& path);

/// A priori encoding choice for qba on a problem. The shifted-norm decode
/// is used for every problem: it reaches the whole box, and it maps each
/// phenotype to a full 3-sphere of genotypes, so optima anywhere in the box
/// are reachable targets for the quaternion dynamics. A plain norm decode
/// only reaches [0, upper] and can only realize a phenotype of zero at the
/// single point where all four components vanish, which the 4-D dynamics
/// essentially never approach.
EncodingMode default_qba_encoding(const Problem& problem);

struct ExecutionSummary {
    int runs_executed = 0;
    int runs_skipped = 0; // already present in the output files
    int cells_failed = 0;
    std::vector<std::string> failures;
};

/// Runs every (algorithm, problem, k) cell with seed = base_seed + k; the
/// same k maps to the same seed for every algorithm, so samples are paired.
/// Results are persisted as one JSON-lines file per (algorithm, problem)
/// plus one CSV trace per run. Cells already on disk are skipped, so an
/// interrupted experiment can be resumed; files come out byte-identical
/// (wall times of already-persisted runs are kept). (algorithm, problem)
/// groups may execute on up to `jobs` threads; outputs do not depend on the
/// thread count.
ExecutionSummary execute(const ExperimentConfig& cfg, unsigned jobs = 1);

// --- persistence ---

nlohmann::json record_to_json(const RunRecord& rec);
RunRecord record_from_json(const nlohmann::json& j);

std::filesystem::path records_path(const std::filesystem::path& dir,
                                   std::string_view algorithm, std::string_view problem);

/// Loads every *.jsonl record file under the directory.
std::vector<RunRecord> load_records(const std::filesystem::path& dir);

// --- reporting ---

struct CellReport {
    std::string algorithm;
    EncodingMode encoding = EncodingMode::Real;
    SampleSummary final_fitness;
};

struct PairwiseReport {
    std::string algorithm; // the baseline qba is compared against
    double p_value = 1.0;
    std::string method;
    char mark = 't'; // 'w' = qba significantly better, 'l' = worse, 't' = tie
};

struct ProblemReport {
    std::string problem;
    std::vector<CellReport> cells;
    std::vector<PairwiseReport> qba_vs;
};

struct Report {
    std::vector<ProblemReport> problems;
    int qba_wins = 0;
    int qba_ties = 0;
    int qba_losses = 0;
};

/// Builds per-(algorithm, problem) summaries and, where qba is present, the
/// pairwise rank-sum comparison of qba against every other algorithm at
/// alpha = 0.05. A pure function of the records, so it can be recomputed
/// offline from the persisted files.
Report build_report(std::span<const RunRecord> records);

std::string format_report_table(const Report& report);
nlohmann::json report_to_json(const Report& report);

/// Writes one CSV per (algorithm, problem) with the mean best-so-far
/// fitness at each checkpoint across that cell's runs. All runs of a cell
/// must agree on the checkpoint cadence.
void emit_convergence(std::span<const RunRecord> records, const std::filesystem::path& out_dir);

} // namespace qbat
