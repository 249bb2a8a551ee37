#include <filesystem>
#include <fstream>
#include <set>

#include <doctest.h>
#include <json.hpp>

#include "qbat/experiment.hpp"

using nlohmann::json;
using qbat::AlgorithmId;
using qbat::EncodingMode;
using qbat::ExperimentConfig;
using qbat::RunRecord;

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("qbat_test_" + std::to_string(std::chrono::steady_clock::now()
                                                  .time_since_epoch()
                                                  .count()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

json small_config(const fs::path& out) {
    return json{
        {"algorithms", {"ba", "de"}},
        {"problems", {"sphere", "rastrigin"}},
        {"dimension", 3},
        {"runs_per_cell", 3},
        {"base_seed", 100},
        {"output_dir", out.string()},
        {"ba", {{"population", 6}, {"max_evaluations", 60}}},
        {"de", {{"population", 6}, {"max_evaluations", 60}}},
    };
}

// Reads a results file with the wall times zeroed, for determinism
// comparisons that exclude them.
std::vector<std::string> canonical_lines(const fs::path& file) {
    std::vector<std::string> lines;
    std::ifstream in(file);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json j = json::parse(line);
        j["wall_time_s"] = 0.0;
        lines.push_back(j.dump());
    }
    return lines;
}

} // namespace

TEST_CASE("minimal config gets the documented defaults") {
    const auto cfg = qbat::parse_config(json{
        {"algorithms", {"ba", "qba"}},
        {"problems", "all"},
        {"dimension", 10},
    });
    CHECK(cfg.runs_per_cell == 25);
    CHECK(cfg.base_seed == 1);
    CHECK(cfg.output_dir == "results");
    CHECK(cfg.dimension == 10);
    CHECK(cfg.problems.size() == 10);
    REQUIRE(cfg.algorithms.size() == 2);

    CHECK(cfg.algorithms[0].id == AlgorithmId::Ba);
    CHECK(cfg.algorithms[0].encoding == EncodingMode::Real);
    CHECK(cfg.algorithms[0].config.population == 30);
    CHECK(cfg.algorithms[0].config.resolved_max_evaluations(10) == 10000);
    CHECK(cfg.algorithms[0].config.resolved_cadence() == 30);

    CHECK(cfg.algorithms[1].id == AlgorithmId::Qba);
    CHECK_FALSE(cfg.algorithms[1].encoding.has_value()); // per-problem choice
}

TEST_CASE("config validation names the offending field") {
    auto base = json{{"algorithms", {"ba"}}, {"problems", "all"}, {"dimension", 4}};

    json bad = base;
    bad["algorithms"] = {"ba", "pso"};
    CHECK_THROWS_WITH_AS(qbat::parse_config(bad), doctest::Contains("pso"),
                         std::invalid_argument);

    bad = base;
    bad["runs_per_cell"] = 0;
    CHECK_THROWS_WITH_AS(qbat::parse_config(bad), doctest::Contains("runs_per_cell"),
                         std::invalid_argument);

    bad = base;
    bad["problems"] = {"sphere", "hyperellipsoid"};
    CHECK_THROWS_WITH_AS(qbat::parse_config(bad), doctest::Contains("hyperellipsoid"),
                         std::invalid_argument);

    bad = base;
    bad["budget"] = 100;
    CHECK_THROWS_WITH_AS(qbat::parse_config(bad), doctest::Contains("budget"),
                         std::invalid_argument);

    bad = base;
    bad["ba"] = {{"swarmsize", 10}};
    CHECK_THROWS_WITH_AS(qbat::parse_config(bad), doctest::Contains("swarmsize"),
                         std::invalid_argument);

    bad = base;
    bad["ba"] = {{"encoding", "quat-norm"}};
    CHECK_THROWS_AS(qbat::parse_config(bad), std::invalid_argument);

    bad = base;
    bad["algorithms"] = {"qba"};
    bad["qba"] = {{"encoding", "real"}};
    CHECK_THROWS_AS(qbat::parse_config(bad), std::invalid_argument);

    bad = base;
    bad["algorithms"] = {"ba", "ba"};
    CHECK_THROWS_AS(qbat::parse_config(bad), std::invalid_argument);

    bad = base;
    bad["de"] = {{"population", 3}};
    bad["algorithms"] = {"de"};
    CHECK_THROWS_AS(qbat::parse_config(bad), std::invalid_argument);

    CHECK_THROWS_AS(qbat::parse_config(json{{"algorithms", {"ba"}}, {"problems", "all"}}),
                    std::invalid_argument); // dimension required
}

TEST_CASE("record serialization round-trips") {
    RunRecord rec;
    rec.algorithm = "qba";
    rec.problem = "ackley";
    rec.seed = 42;
    rec.encoding = EncodingMode::QuatShiftedNorm;
    rec.trace = {{30, 19.5}, {60, 17.25}};
    rec.final_fitness = 17.25;
    rec.final_phenotype = {0.5, -0.25};
    rec.evaluations = 60;
    rec.wall_time_s = 0.125;

    const RunRecord back = qbat::record_from_json(qbat::record_to_json(rec));
    CHECK(back.algorithm == rec.algorithm);
    CHECK(back.problem == rec.problem);
    CHECK(back.seed == rec.seed);
    CHECK(back.encoding == rec.encoding);
    CHECK(back.trace == rec.trace);
    CHECK(back.final_fitness == rec.final_fitness);
    CHECK(back.final_phenotype == rec.final_phenotype);
    CHECK(back.evaluations == rec.evaluations);
    CHECK(back.wall_time_s == rec.wall_time_s);
}

TEST_CASE("execute fills the matrix with paired seeds and is resumable") {
    TempDir tmp;
    const auto cfg = qbat::parse_config(small_config(tmp.path / "a"));

    const auto first = qbat::execute(cfg, 2);
    CHECK(first.runs_executed == 12); // 2 algorithms x 2 problems x 3 runs
    CHECK(first.runs_skipped == 0);
    CHECK(first.cells_failed == 0);

    auto records = qbat::load_records(tmp.path / "a");
    CHECK(records.size() == 12);

    // Same seeds across algorithms for each problem and k.
    std::set<std::uint64_t> seeds;
    for (const auto& rec : records) seeds.insert(rec.seed);
    CHECK(seeds == std::set<std::uint64_t>{100, 101, 102});
    for (const auto& rec : records) {
        CHECK(rec.evaluations <= 60 + 6);
        CHECK(rec.final_phenotype.size() == 3);
    }

    // A second execute reuses everything.
    const auto again = qbat::execute(cfg, 1);
    CHECK(again.runs_executed == 0);
    CHECK(again.runs_skipped == 12);

    // Fresh directory, different parallelism: byte-identical results apart
    // from wall times.
    auto cfg_b = qbat::parse_config(small_config(tmp.path / "b"));
    qbat::execute(cfg_b, 4);
    for (const char* name : {"ba__sphere.jsonl", "ba__rastrigin.jsonl", "de__sphere.jsonl",
                             "de__rastrigin.jsonl"}) {
        CHECK(canonical_lines(tmp.path / "a" / name) == canonical_lines(tmp.path / "b" / name));
    }

    // Resume after losing one cell file: only its runs are redone and the
    // bytes come out the same.
    const auto lost = tmp.path / "a" / "de__rastrigin.jsonl";
    const auto before = canonical_lines(lost);
    fs::remove(lost);
    const auto resumed = qbat::execute(cfg, 1);
    CHECK(resumed.runs_executed == 3);
    CHECK(resumed.runs_skipped == 9);
    CHECK(canonical_lines(lost) == before);

    // Per-run trace CSVs exist.
    CHECK(fs::exists(tmp.path / "a" / "traces" / "ba__sphere__s100.csv"));
    CHECK(fs::exists(tmp.path / "a" / "traces" / "de__rastrigin__s102.csv"));
}

TEST_CASE("reports summarize cells and compare qba against the rest") {
    auto make_record = [](const char* algo, const char* problem, double fitness) {
        RunRecord r;
        r.algorithm = algo;
        r.problem = problem;
        r.encoding = std::string(algo) == "qba" ? EncodingMode::QuatShiftedNorm
                                                : EncodingMode::Real;
        r.final_fitness = fitness;
        r.trace = {{10, fitness}};
        r.evaluations = 10;
        return r;
    };

    SUBCASE("full separation is a win at 25 paired runs") {
        std::vector<RunRecord> records;
        for (int k = 0; k < 25; ++k) {
            records.push_back(make_record("qba", "sphere", 1.0 + k));
            records.push_back(make_record("ba", "sphere", 100.0 + k));
        }
        const auto report = qbat::build_report(records);
        REQUIRE(report.problems.size() == 1);
        REQUIRE(report.problems[0].qba_vs.size() == 1);
        CHECK(report.problems[0].qba_vs[0].mark == 'w');
        CHECK(report.problems[0].qba_vs[0].p_value < 0.05);
        CHECK(report.qba_wins == 1);

        const std::string table = qbat::format_report_table(report);
        CHECK(table.find("sphere") != std::string::npos);
        CHECK(table.find("win") != std::string::npos);

        const auto j = qbat::report_to_json(report);
        CHECK(j.at("qba_wins") == 1);
    }

    SUBCASE("identical samples tie") {
        std::vector<RunRecord> records;
        for (int k = 0; k < 25; ++k) {
            records.push_back(make_record("qba", "ackley", 5.0 + k));
            records.push_back(make_record("ba", "ackley", 5.0 + k));
        }
        const auto report = qbat::build_report(records);
        CHECK(report.problems[0].qba_vs[0].mark == 't');
        CHECK(report.qba_ties == 1);
    }

    SUBCASE("reversed separation is a loss") {
        std::vector<RunRecord> records;
        for (int k = 0; k < 25; ++k) {
            records.push_back(make_record("qba", "ackley", 100.0 + k));
            records.push_back(make_record("abc", "ackley", 1.0 + k));
        }
        const auto report = qbat::build_report(records);
        CHECK(report.problems[0].qba_vs[0].mark == 'l');
        CHECK(report.qba_losses == 1);
    }

    SUBCASE("without qba the pairwise section is empty") {
        std::vector<RunRecord> records;
        for (int k = 0; k < 5; ++k) records.push_back(make_record("ba", "sphere", 1.0 + k));
        const auto report = qbat::build_report(records);
        REQUIRE(report.problems.size() == 1);
        CHECK(report.problems[0].cells.size() == 1);
        CHECK(report.problems[0].qba_vs.empty());
    }

    CHECK_THROWS_AS(qbat::build_report(std::vector<RunRecord>{}), std::invalid_argument);
}

TEST_CASE("convergence files average checkpoints across runs") {
    TempDir tmp;

    auto make_record = [](double offset, std::size_t points) {
        RunRecord r;
        r.algorithm = "ba";
        r.problem = "sphere";
        r.encoding = EncodingMode::Real;
        for (std::size_t i = 0; i < points; ++i) {
            r.trace.emplace_back(static_cast<long>(10 * (i + 1)), 100.0 / (i + 1) + offset);
        }
        r.final_fitness = r.trace.back().second;
        r.evaluations = r.trace.back().first;
        return r;
    };

    SUBCASE("mean of matching traces, truncated to the shortest") {
        const std::vector<RunRecord> records{make_record(0.0, 4), make_record(2.0, 3)};
        qbat::emit_convergence(records, tmp.path);

        std::ifstream in(tmp.path / "ba__sphere.csv");
        REQUIRE(in.good());
        std::string header;
        std::getline(in, header);
        CHECK(header == "evaluations,mean_best_fitness");
        long evals = 0;
        double mean = 0.0;
        char comma = 0;
        std::vector<std::pair<long, double>> rows;
        while (in >> evals >> comma >> mean) rows.emplace_back(evals, mean);
        REQUIRE(rows.size() == 3);
        CHECK(rows[0] == std::pair<long, double>{10, 101.0});
        CHECK(rows[1] == std::pair<long, double>{20, 51.0});
        CHECK(rows[2].first == 30);
        // Pointwise means of non-increasing traces stay non-increasing.
        CHECK(rows[1].second <= rows[0].second);
        CHECK(rows[2].second <= rows[1].second);
    }

    SUBCASE("cadence mismatches are rejected") {
        RunRecord odd = make_record(0.0, 3);
        for (auto& [evals, fitness] : odd.trace) evals += 5;
        const std::vector<RunRecord> records{make_record(0.0, 3), odd};
        CHECK_THROWS_AS(qbat::emit_convergence(records, tmp.path), std::invalid_argument);
    }

    SUBCASE("empty input is rejected") {
        CHECK_THROWS_AS(qbat::emit_convergence(std::vector<RunRecord>{}, tmp.path),
                        std::invalid_argument);
    }
}

TEST_CASE("checkpoint row counts follow the documented budget arithmetic") {
    // population 30 and a 10000-evaluation budget: initialization plus 333
    // full generations, checkpoints every 30 evaluations -> 334 rows.
    qbat::AlgoConfig cfg;
    cfg.population = 30;
    cfg.max_evaluations = 10000;
    const auto rec = qbat::run_seeded(AlgorithmId::Ba, qbat::make_sphere(10), cfg, 5);
    CHECK(rec.trace.size() == 334);
    CHECK(rec.evaluations == 10020);
    CHECK(rec.trace.front().first == 30);
    CHECK(rec.trace.back().first == 10020);
}

TEST_CASE("qba auto encoding covers the whole box") {
    for (const auto& p : qbat::suite(4)) {
        CHECK(qbat::default_qba_encoding(p) == EncodingMode::QuatShiftedNorm);
    }
}
