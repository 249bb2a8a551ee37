#include <chrono>
#include <stdexcept>
#include <string>

#include "qbat/algorithm.hpp"

namespace qbat {

std::string_view to_string(AlgorithmId id) {
    switch (id) {
        case AlgorithmId::Ba: return "ba";
        case AlgorithmId::Qba: return "qba";
        case AlgorithmId::De: return "de";
        case AlgorithmId::Abc: return "abc";
    }
    return "?";
}

AlgorithmId algorithm_from_string(std::string_view text) {
    if (text == "ba") return AlgorithmId::Ba;
    if (text == "qba") return AlgorithmId::Qba;
    if (text == "de") return AlgorithmId::De;
    if (text == "abc") return AlgorithmId::Abc;
    throw std::invalid_argument("unknown algorithm \"" + std::string(text) + "\"");
}

void validate_config(AlgorithmId id, const AlgoConfig& cfg, const Problem& problem) {
    std::string errors;
    auto fail = [&](const std::string& msg) {
        if (!errors.empty()) errors += "; ";
        errors += msg;
    };

    if (problem.dim == 0 || problem.bounds.dim() != problem.dim) {
        fail("problem dimension and bounds disagree");
    }
    if (cfg.population < 1) fail("population must be >= 1");
    if (cfg.max_evaluations < 0) fail("max_evaluations must be >= 0");
    if (cfg.checkpoint_cadence < 0) fail("checkpoint_cadence must be >= 0");

    switch (id) {
        case AlgorithmId::Ba:
        case AlgorithmId::Qba: {
            const auto& b = cfg.bat;
            if (!(b.frequency_min < b.frequency_max)) fail("frequency_min must be below frequency_max");
            if (!(b.loudness_decay > 0.0 && b.loudness_decay < 1.0)) fail("loudness_decay must be in (0, 1)");
            if (!(b.pulse_growth > 0.0)) fail("pulse_growth must be positive");
            if (!(b.initial_loudness > 0.0)) fail("initial_loudness must be positive");
            if (!(b.pulse_rate_target >= 0.0 && b.pulse_rate_target <= 1.0)) {
                fail("pulse_rate_target must be in [0, 1]");
            }
            if (id == AlgorithmId::Ba && cfg.encoding != EncodingMode::Real) {
                fail("ba requires the real encoding");
            }
            if (id == AlgorithmId::Qba && cfg.encoding == EncodingMode::Real) {
                fail("qba requires a quaternion encoding");
            }
            break;
        }
        case AlgorithmId::De: {
            if (cfg.population < 4) fail("de needs population >= 4 (three partners plus the target)");
            if (!(cfg.de.weight > 0.0)) fail("weight must be positive");
            if (!(cfg.de.crossover >= 0.0 && cfg.de.crossover <= 1.0)) fail("crossover must be in [0, 1]");
            if (cfg.encoding != EncodingMode::Real) fail("de requires the real encoding");
            break;
        }
        case AlgorithmId::Abc: {
            if (cfg.population < 4) fail("abc needs population >= 4 (at least two food sources)");
            if (cfg.encoding != EncodingMode::Real) fail("abc requires the real encoding");
            break;
        }
    }

    if (!errors.empty()) {
        throw std::invalid_argument("invalid config for " + std::string(to_string(id)) + ": " + errors);
    }
}

RunRecord run(AlgorithmId id, const Problem& problem, const AlgoConfig& cfg, RandomStream& rng) {
    switch (id) {
        case AlgorithmId::Ba: return run_ba(problem, cfg, rng);
        case AlgorithmId::Qba: return run_qba(problem, cfg, rng);
        case AlgorithmId::De: return run_de(problem, cfg, rng);
        case AlgorithmId::Abc: return run_abc(problem, cfg, rng);
    }
    throw std::invalid_argument("unknown algorithm id");
}

RunRecord run_seeded(AlgorithmId id, const Problem& problem, const AlgoConfig& cfg,
                     std::uint64_t seed) {
    Mt64Stream rng(seed);
    const auto start = std::chrono::steady_clock::now();
    RunRecord rec = run(id, problem, cfg, rng);
    const auto stop = std::chrono::steady_clock::now();
    rec.seed = seed;
    rec.wall_time_s = std::chrono::duration<double>(stop - start).count();
    return rec;
}

} // namespace qbat
