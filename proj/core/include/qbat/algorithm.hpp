#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qbat/encoding.hpp"
#include "qbat/problem.hpp"
#include "qbat/rng.hpp"

namespace qbat {

enum class AlgorithmId { Ba, Qba, De, Abc };

std::string_view to_string(AlgorithmId id);

/// Parses "ba", "qba", "de" or "abc"; throws std::invalid_argument naming
/// the offending id otherwise.
AlgorithmId algorithm_from_string(std::string_view text);

/// Bat-specific controls. Loudness starts at initial_loudness and is
/// multiplied by loudness_decay on every accepted move; the pulse rate
/// starts at zero and climbs toward pulse_rate_target with the generation
/// index (see bat_pulse_rate).
struct BatParams {
    double frequency_min = 0.0;
    double frequency_max = 2.0;
    double loudness_decay = 0.9;   // alpha, in (0, 1)
    double pulse_growth = 0.9;     // gamma, > 0
    double initial_loudness = 1.0; // A0, > 0
    double pulse_rate_target = 0.5; // r0, in [0, 1]
};

struct DeParams {
    double weight = 0.5;    // F, > 0
    double crossover = 0.9; // CR, in [0, 1]
};

struct AbcParams {
    long trial_limit = -1; // scout trigger; -1 means population * dim / 2
};

struct AlgoConfig {
    int population = 30;
    long max_evaluations = 0;     // 0 means 1000 * dim
    long checkpoint_cadence = 0;  // 0 means population
    EncodingMode encoding = EncodingMode::Real;
    BatParams bat;
    DeParams de;
    AbcParams abc;

    long resolved_max_evaluations(std::size_t dim) const {
        return max_evaluations > 0 ? max_evaluations : 1000L * static_cast<long>(dim);
    }
    long resolved_cadence() const {
        return checkpoint_cadence > 0 ? checkpoint_cadence : population;
    }
    long resolved_trial_limit(std::size_t dim) const {
        return abc.trial_limit >= 0 ? abc.trial_limit
                                    : static_cast<long>(population) * static_cast<long>(dim) / 2;
    }
};

/// One seeded optimization run. trace holds (evaluations_used, best so far)
/// checkpoints taken whenever the evaluation count crosses a cadence
/// multiple; best-so-far values are non-increasing along it. wall_time_s is
/// recorded but excluded from any determinism comparison.
struct RunRecord {
    std::string algorithm;
    std::string problem;
    std::uint64_t seed = 0;
    EncodingMode encoding = EncodingMode::Real;
    std::vector<std::pair<long, double>> trace;
    double final_fitness = std::numeric_limits<double>::infinity();
    std::vector<double> final_phenotype;
    long evaluations = 0;
    double wall_time_s = 0.0;
};

/// Pulse rate after an accepted move in the given generation (1-based):
/// target * (1 - exp(-growth * generation)). Non-decreasing in the
/// generation and bounded by target.
inline double bat_pulse_rate(double target, double growth, long generation) {
    return target * (1.0 - std::exp(-growth * static_cast<double>(generation)));
}

/// Frequency for one move: f_min + (f_max - f_min) * beta with beta the
/// individual's uniform draw, so the endpoints of the draw map to the
/// endpoints of the frequency range.
inline double bat_frequency(double f_min, double f_max, double beta) {
    return f_min + (f_max - f_min) * beta;
}

/// Validates the config for one algorithm/problem pairing; throws
/// std::invalid_argument describing every violated constraint.
void validate_config(AlgorithmId id, const AlgoConfig& cfg, const Problem& problem);

// Small pure steps of DE and ABC, used by the runs below and directly
// testable.

/// DE/rand/1 mutant: x1 + weight * (x2 - x3).
std::vector<double> de_mutant(std::span<const double> x1, std::span<const double> x2,
                              std::span<const double> x3, double weight);

/// Binomial crossover: takes the mutant where the per-coordinate draw falls
/// below cr or at the forced coordinate, the target elsewhere. Consumes
/// exactly one draw per coordinate.
std::vector<double> de_crossover(std::span<const double> target,
                                 std::span<const double> mutant, double cr,
                                 std::size_t forced, RandomStream& rng);

/// ABC neighbour move in one coordinate: x + phi * (x - partner).
inline double abc_candidate_coord(double x, double partner, double phi) {
    return x + phi * (x - partner);
}

/// Onlooker selection weights: fitness f maps to 1/(1+f) for f >= 0 and to
/// 1+|f| otherwise; the result is normalized to sum to one.
std::vector<double> abc_selection_weights(std::span<const double> fitness);

// The optimizers. Each call validates its config, consumes the stream as
// its only source of randomness, and returns a complete RunRecord (with
// seed and wall_time_s left for the caller to fill when it owns them).

RunRecord run_ba(const Problem& problem, const AlgoConfig& cfg, RandomStream& rng);
RunRecord run_qba(const Problem& problem, const AlgoConfig& cfg, RandomStream& rng);
RunRecord run_de(const Problem& problem, const AlgoConfig& cfg, RandomStream& rng);
RunRecord run_abc(const Problem& problem, const AlgoConfig& cfg, RandomStream& rng);

/// Dispatches on the algorithm id.
RunRecord run(AlgorithmId id, const Problem& problem, const AlgoConfig& cfg, RandomStream& rng);

/// Runs with a fresh Mt64Stream(seed), records the seed and the wall time.
RunRecord run_seeded(AlgorithmId id, const Problem& problem, const AlgoConfig& cfg,
                     std::uint64_t seed);

} // namespace qbat
