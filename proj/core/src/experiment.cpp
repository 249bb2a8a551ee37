#include "qbat/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace qbat {

namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& message) {
    throw std::invalid_argument("config error: " + message);
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& context) {
    for (const auto& item : obj.items()) {
        if (!allowed.contains(item.key())) {
            config_error("unknown key \"" + item.key() + "\" in " + context);
        }
    }
}

double get_number(const json& obj, const std::string& key, const std::string& context,
                  double fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj.at(key).is_number()) config_error(context + "." + key + ": expected a number");
    return obj.at(key).get<double>();
}

long get_integer(const json& obj, const std::string& key, const std::string& context,
                 long fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj.at(key).is_number_integer()) config_error(context + "." + key + ": expected an integer");
    return obj.at(key).get<long>();
}

AlgoConfig parse_algo_block(const json& root, AlgorithmId id, long cadence) {
    AlgoConfig cfg;
    cfg.checkpoint_cadence = cadence;
    const std::string name{to_string(id)};
    if (!root.contains(name)) return cfg;
    const json& block = root.at(name);
    if (!block.is_object()) config_error(name + ": expected an object");

    std::set<std::string> allowed = {"population", "max_evaluations", "encoding"};
    if (id == AlgorithmId::Ba || id == AlgorithmId::Qba) {
        allowed.insert({"f_min", "f_max", "alpha", "gamma", "loudness", "pulse_rate"});
    } else if (id == AlgorithmId::De) {
        allowed.insert({"weight", "crossover"});
    } else {
        allowed.insert({"limit"});
    }
    reject_unknown_keys(block, allowed, "\"" + name + "\"");

    cfg.population = static_cast<int>(get_integer(block, "population", name, cfg.population));
    cfg.max_evaluations = get_integer(block, "max_evaluations", name, cfg.max_evaluations);
    cfg.bat.frequency_min = get_number(block, "f_min", name, cfg.bat.frequency_min);
    cfg.bat.frequency_max = get_number(block, "f_max", name, cfg.bat.frequency_max);
    cfg.bat.loudness_decay = get_number(block, "alpha", name, cfg.bat.loudness_decay);
    cfg.bat.pulse_growth = get_number(block, "gamma", name, cfg.bat.pulse_growth);
    cfg.bat.initial_loudness = get_number(block, "loudness", name, cfg.bat.initial_loudness);
    cfg.bat.pulse_rate_target = get_number(block, "pulse_rate", name, cfg.bat.pulse_rate_target);
    cfg.de.weight = get_number(block, "weight", name, cfg.de.weight);
    cfg.de.crossover = get_number(block, "crossover", name, cfg.de.crossover);
    cfg.abc.trial_limit = get_integer(block, "limit", name, cfg.abc.trial_limit);
    return cfg;
}

std::optional<EncodingMode> parse_encoding_field(const json& root, AlgorithmId id) {
    const std::string name{to_string(id)};
    const bool is_qba = id == AlgorithmId::Qba;
    std::string text = is_qba ? "auto" : "real";
    if (root.contains(name) && root.at(name).contains("encoding")) {
        const json& enc = root.at(name).at("encoding");
        if (!enc.is_string()) config_error(name + ".encoding: expected a string");
        text = enc.get<std::string>();
    }
    if (text == "auto") {
        if (!is_qba) config_error(name + ".encoding: \"auto\" is only valid for qba");
        return std::nullopt;
    }
    EncodingMode mode;
    try {
        mode = encoding_from_string(text);
    } catch (const std::invalid_argument&) {
        config_error(name + ".encoding: unknown encoding \"" + text + "\"");
    }
    if (is_qba && mode == EncodingMode::Real) {
        config_error(name + ".encoding: qba requires a quaternion encoding");
    }
    if (!is_qba && mode != EncodingMode::Real) {
        config_error(name + ".encoding: " + name + " requires the real encoding");
    }
    return mode;
}

} // namespace

ExperimentConfig parse_config(const json& j) {
    if (!j.is_object()) config_error("top level: expected an object");
    reject_unknown_keys(j,
                        {"algorithms", "problems", "dimension", "runs_per_cell", "base_seed",
                         "output_dir", "checkpoint_cadence", "ba", "qba", "de", "abc"},
                        "the top-level object");

    ExperimentConfig cfg;

    if (!j.contains("dimension")) config_error("dimension: required");
    if (!j.at("dimension").is_number_integer() || j.at("dimension").get<long>() < 1) {
        config_error("dimension: must be a positive integer");
    }
    cfg.dimension = j.at("dimension").get<std::size_t>();

    const long runs = get_integer(j, "runs_per_cell", "top level", 25);
    if (runs < 1) config_error("runs_per_cell: must be >= 1");
    cfg.runs_per_cell = static_cast<int>(runs);

    const long seed = get_integer(j, "base_seed", "top level", 1);
    if (seed < 0) config_error("base_seed: must be >= 0");
    cfg.base_seed = static_cast<std::uint64_t>(seed);

    if (j.contains("output_dir")) {
        if (!j.at("output_dir").is_string()) config_error("output_dir: expected a string");
        cfg.output_dir = j.at("output_dir").get<std::string>();
    }

    const long cadence = get_integer(j, "checkpoint_cadence", "top level", 0);
    if (cadence < 0) config_error("checkpoint_cadence: must be >= 0");

    // algorithms
    if (!j.contains("algorithms")) config_error("algorithms: required");
    if (!j.at("algorithms").is_array() || j.at("algorithms").empty()) {
        config_error("algorithms: expected a nonempty array of ids");
    }
    std::set<std::string> seen_algorithms;
    for (std::size_t i = 0; i < j.at("algorithms").size(); ++i) {
        const json& entry = j.at("algorithms").at(i);
        const std::string where = "algorithms[" + std::to_string(i) + "]";
        if (!entry.is_string()) config_error(where + ": expected a string id");
        const std::string id_text = entry.get<std::string>();
        AlgorithmSpec spec;
        try {
            spec.id = algorithm_from_string(id_text);
        } catch (const std::invalid_argument&) {
            config_error(where + ": unknown algorithm \"" + id_text + "\"");
        }
        if (!seen_algorithms.insert(id_text).second) {
            config_error(where + ": algorithm \"" + id_text + "\" listed twice");
        }
        spec.config = parse_algo_block(j, spec.id, cadence);
        spec.encoding = parse_encoding_field(j, spec.id);
        cfg.algorithms.push_back(std::move(spec));
    }

    // problems
    if (!j.contains("problems")) config_error("problems: required");
    const auto catalogue = suite(cfg.dimension);
    if (j.at("problems").is_string()) {
        if (j.at("problems").get<std::string>() != "all") {
            config_error("problems: expected \"all\" or an array of names");
        }
        for (const auto& p : catalogue) cfg.problems.push_back(p.name);
    } else if (j.at("problems").is_array() && !j.at("problems").empty()) {
        std::set<std::string> seen_problems;
        for (std::size_t i = 0; i < j.at("problems").size(); ++i) {
            const json& entry = j.at("problems").at(i);
            const std::string where = "problems[" + std::to_string(i) + "]";
            if (!entry.is_string()) config_error(where + ": expected a string name");
            const std::string name = entry.get<std::string>();
            const bool known = std::any_of(catalogue.begin(), catalogue.end(),
                                           [&](const Problem& p) { return p.name == name; });
            if (!known) config_error(where + ": unknown problem \"" + name + "\"");
            if (!seen_problems.insert(name).second) {
                config_error(where + ": problem \"" + name + "\" listed twice");
            }
            cfg.problems.push_back(name);
        }
    } else {
        config_error("problems: expected \"all\" or a nonempty array of names");
    }

    // Surface per-algorithm invariant violations now, with the block named.
    for (const auto& spec : cfg.algorithms) {
        AlgoConfig probe = spec.config;
        probe.encoding = spec.encoding.value_or(
            spec.id == AlgorithmId::Qba ? EncodingMode::QuatShiftedNorm : EncodingMode::Real);
        try {
            validate_config(spec.id, probe, catalogue.front());
        } catch (const std::invalid_argument& e) {
            config_error(std::string(to_string(spec.id)) + ": " + e.what());
        }
    }

    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open config file " + path.string());
    }
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("config parse error in " + path.string() + ": " + e.what());
    }
    return parse_config(j);
}

EncodingMode default_qba_encoding(const Problem&) {
    return EncodingMode::QuatShiftedNorm;
}

json record_to_json(const RunRecord& rec) {
    json j;
    j["algorithm"] = rec.algorithm;
    j["problem"] = rec.problem;
    j["seed"] = rec.seed;
    j["encoding"] = std::string(to_string(rec.encoding));
    json trace = json::array();
    for (const auto& [evals, best] : rec.trace) {
        trace.push_back(json::array({evals, best}));
    }
    j["trace"] = std::move(trace);
    j["final_fitness"] = rec.final_fitness;
    j["final_phenotype"] = rec.final_phenotype;
    j["evaluations"] = rec.evaluations;
    j["wall_time_s"] = rec.wall_time_s;
    return j;
}

RunRecord record_from_json(const json& j) {
    RunRecord rec;
    rec.algorithm = j.at("algorithm").get<std::string>();
    rec.problem = j.at("problem").get<std::string>();
    rec.seed = j.at("seed").get<std::uint64_t>();
    rec.encoding = encoding_from_string(j.at("encoding").get<std::string>());
    for (const auto& entry : j.at("trace")) {
        rec.trace.emplace_back(entry.at(0).get<long>(), entry.at(1).get<double>());
    }
    rec.final_fitness = j.at("final_fitness").get<double>();
    rec.final_phenotype = j.at("final_phenotype").get<std::vector<double>>();
    rec.evaluations = j.at("evaluations").get<long>();
    rec.wall_time_s = j.at("wall_time_s").get<double>();
    return rec;
}

std::filesystem::path records_path(const std::filesystem::path& dir,
                                   std::string_view algorithm, std::string_view problem) {
    return dir / (std::string(algorithm) + "__" + std::string(problem) + ".jsonl");
}

namespace {

std::filesystem::path trace_path(const std::filesystem::path& dir, const RunRecord& rec) {
    return dir / "traces" /
           (rec.algorithm + "__" + rec.problem + "__s" + std::to_string(rec.seed) + ".csv");
}

void write_trace_csv(const std::filesystem::path& path, const RunRecord& rec) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "evaluations,best_fitness\n";
    char line[64];
    for (const auto& [evals, best] : rec.trace) {
        std::snprintf(line, sizeof(line), "%ld,%.17g\n", evals, best);
        out << line;
    }
}

struct Cell {
    AlgorithmSpec spec;
    Problem problem;
};

// Runs one (algorithm, problem) group: reuses persisted runs, appends the
// missing ones as they complete, then rewrites the file sorted by seed so
// the on-disk form does not depend on interruption history.
void run_group(const ExperimentConfig& cfg, const Cell& cell, ExecutionSummary& summary,
               std::mutex& summary_mutex) {
    AlgoConfig run_cfg = cell.spec.config;
    run_cfg.encoding = cell.spec.encoding
                           ? *cell.spec.encoding
                           : (cell.spec.id == AlgorithmId::Qba ? default_qba_encoding(cell.problem)
                                                               : EncodingMode::Real);

    const auto file = records_path(cfg.output_dir, to_string(cell.spec.id), cell.problem.name);

    std::map<std::uint64_t, std::string> lines; // seed -> serialized record
    if (std::filesystem::exists(file)) {
        std::ifstream in(file);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            const json j = json::parse(line);
            lines[j.at("seed").get<std::uint64_t>()] = line;
        }
    }

    // Drop runs outside the configured seed range (left over from a run of a
    // different config against the same output directory).
    const std::uint64_t first_seed = cfg.base_seed;
    const std::uint64_t last_seed = cfg.base_seed + static_cast<std::uint64_t>(cfg.runs_per_cell);
    std::erase_if(lines, [&](const auto& kv) {
        return kv.first < first_seed || kv.first >= last_seed;
    });

    int executed = 0;
    int skipped = 0;
    {
        std::ofstream append(file, std::ios::app);
        for (int k = 0; k < cfg.runs_per_cell; ++k) {
            const std::uint64_t seed = cfg.base_seed + static_cast<std::uint64_t>(k);
            if (auto it = lines.find(seed); it != lines.end()) {
                ++skipped;
                const auto tpath = trace_path(cfg.output_dir, record_from_json(json::parse(it->second)));
                if (!std::filesystem::exists(tpath)) {
                    write_trace_csv(tpath, record_from_json(json::parse(it->second)));
                }
                continue;
            }
            RunRecord rec = run_seeded(cell.spec.id, cell.problem, run_cfg, seed);
            const std::string line = record_to_json(rec).dump();
            append << line << "\n";
            append.flush();
            write_trace_csv(trace_path(cfg.output_dir, rec), rec);
            lines[seed] = line;
            ++executed;
        }
    }

    std::ofstream out(file, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + file.string());
    for (const auto& [seed, line] : lines) {
        out << line << "\n";
    }

    std::lock_guard<std::mutex> lock(summary_mutex);
    summary.runs_executed += executed;
    summary.runs_skipped += skipped;
}

} // namespace

ExecutionSummary execute(const ExperimentConfig& cfg, unsigned jobs) {
    std::filesystem::create_directories(cfg.output_dir / "traces");

    std::vector<Cell> cells;
    for (const auto& spec : cfg.algorithms) {
        for (const auto& name : cfg.problems) {
            cells.push_back({spec, problem_by_name(name, cfg.dimension)});
        }
    }

    ExecutionSummary summary;
    std::mutex summary_mutex;
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cells.size()) return;
            try {
                run_group(cfg, cells[i], summary, summary_mutex);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(summary_mutex);
                ++summary.cells_failed;
                summary.failures.push_back(std::string(to_string(cells[i].spec.id)) + "/" +
                                           cells[i].problem.name + ": " + e.what());
            }
        }
    };

    const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(cells.size())));
    if (n == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n);
        for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return summary;
}

std::vector<RunRecord> load_records(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) {
        throw std::runtime_error(dir.string() + " is not a directory");
    }
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".jsonl") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());

    std::vector<RunRecord> records;
    for (const auto& file : files) {
        std::ifstream in(file);
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            try {
                records.push_back(record_from_json(json::parse(line)));
            } catch (const std::exception& e) {
                throw std::runtime_error(file.string() + ":" + std::to_string(lineno) +
                                         ": bad record: " + e.what());
            }
        }
    }
    return records;
}

} // namespace qbat
