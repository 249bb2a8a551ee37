#include <string>
#include <vector>

#include "qbat/algorithm.hpp"
#include "run_support.hpp"

namespace qbat {

namespace {

// BA and QBA are the same generational loop; only the coordinate type and
// its operations differ. Both specializations keep the exact draw order:
// initialization draws one genotype per individual (dim coordinate draws,
// or 4*dim in quaternion space) followed by its evaluation; each generation
// then consumes, per individual: the frequency draw, the walk-decision
// draw, the per-coordinate walk draws when the walk triggers, and finally
// the acceptance draw.

struct RealCoords {
    using Coord = double;
    static Coord zero() { return 0.0; }
    static Coord add(Coord a, Coord b) { return a + b; }
    static Coord sub(Coord a, Coord b) { return a - b; }
    static Coord scale(double s, Coord c) { return s * c; }
    static Coord walk_step(RandomStream& rng) { return rng.uniform(-1.0, 1.0); }
    static Coord init(RandomStream& rng, double lo, double hi, EncodingMode) {
        return rng.uniform(lo, hi);
    }
    static double decode(Coord c, double lo, double hi, EncodingMode) {
        return decode_real(c, lo, hi);
    }
};

struct QuatCoords {
    using Coord = Quaternion;
    static Coord zero() { return Quaternion::zero(); }
    static Coord add(const Coord& a, const Coord& b) { return a + b; }
    static Coord sub(const Coord& a, const Coord& b) { return a - b; }
    static Coord scale(double s, const Coord& c) { return s * c; }
    static Coord walk_step(RandomStream& rng) { return random_quaternion(rng, 1.0); }
    static Coord init(RandomStream& rng, double lo, double hi, EncodingMode mode) {
        return random_quaternion(rng, init_scale(lo, hi, mode));
    }
    static double decode(const Coord& c, double lo, double hi, EncodingMode mode) {
        return decode_quat(c, lo, hi, mode);
    }
};

template <class C>
RunRecord bat_run(const Problem& problem, const AlgoConfig& cfg, RandomStream& rng,
                  std::string algorithm_name) {
    using Coord = typename C::Coord;

    const std::size_t dim = problem.dim;
    const int np = cfg.population;
    const EncodingMode mode = cfg.encoding;
    const auto& lo = problem.bounds.lower;
    const auto& hi = problem.bounds.upper;

    RunRecord rec;
    rec.algorithm = std::move(algorithm_name);
    rec.problem = problem.name;
    rec.encoding = mode;

    detail::RunTracker tracker(cfg.resolved_max_evaluations(dim), cfg.resolved_cadence());

    struct Bat {
        std::vector<Coord> position;
        std::vector<Coord> velocity;
        std::vector<double> phenotype;
        double fitness = 0.0;
        double loudness = 0.0;
        double pulse_rate = 0.0;
    };

    std::vector<Coord> best_position(dim, C::zero());

    auto decode_into = [&](const std::vector<Coord>& g, std::vector<double>& out) {
        for (std::size_t j = 0; j < dim; ++j) {
            out[j] = C::decode(g[j], lo[j], hi[j], mode);
        }
    };

    std::vector<Bat> population(np);
    for (auto& bat : population) {
        bat.position.reserve(dim);
        for (std::size_t j = 0; j < dim; ++j) {
            bat.position.push_back(C::init(rng, lo[j], hi[j], mode));
        }
        bat.velocity.assign(dim, C::zero());
        bat.phenotype.resize(dim);
        decode_into(bat.position, bat.phenotype);
        bat.fitness = problem.evaluate(bat.phenotype, rng);
        bat.loudness = cfg.bat.initial_loudness;
        bat.pulse_rate = 0.0;
        if (bat.fitness <= tracker.best_fitness) {
            tracker.best_fitness = bat.fitness;
            tracker.best_phenotype = bat.phenotype;
            best_position = bat.position;
        }
        tracker.count_eval();
    }

    std::vector<Coord> candidate(dim, C::zero());
    std::vector<double> candidate_phenotype(dim);

    for (long generation = 1; !tracker.exhausted(); ++generation) {
        double mean_loudness = 0.0;
        for (const auto& bat : population) mean_loudness += bat.loudness;
        mean_loudness /= np;

        for (auto& bat : population) {
            const double beta = rng.next();
            const double freq = bat_frequency(cfg.bat.frequency_min, cfg.bat.frequency_max, beta);

            // The pull keeps updating the velocity even when the local walk
            // replaces the candidate below.
            for (std::size_t j = 0; j < dim; ++j) {
                bat.velocity[j] =
                    C::add(bat.velocity[j], C::scale(freq, C::sub(bat.position[j], best_position[j])));
                candidate[j] = C::add(bat.position[j], bat.velocity[j]);
            }

            if (rng.next() > bat.pulse_rate) {
                for (std::size_t j = 0; j < dim; ++j) {
                    candidate[j] = C::add(best_position[j], C::scale(mean_loudness, C::walk_step(rng)));
                }
            }

            decode_into(candidate, candidate_phenotype);
            const double candidate_fitness = problem.evaluate(candidate_phenotype, rng);

            const double acceptance = rng.next();
            if (acceptance < bat.loudness && candidate_fitness <= bat.fitness) {
                bat.position = candidate;
                bat.phenotype = candidate_phenotype;
                bat.fitness = candidate_fitness;
                bat.loudness *= cfg.bat.loudness_decay;
                bat.pulse_rate =
                    bat_pulse_rate(cfg.bat.pulse_rate_target, cfg.bat.pulse_growth, generation);
                if (candidate_fitness <= tracker.best_fitness) {
                    tracker.best_fitness = candidate_fitness;
                    tracker.best_phenotype = candidate_phenotype;
                    best_position = candidate;
                }
            }
            tracker.count_eval();
        }
    }

    tracker.finish(rec);
    return rec;
}

} // namespace

RunRecord run_ba(const Problem& problem, const AlgoConfig& cfg, RandomStream& rng) {
    validate_config(AlgorithmId::Ba, cfg, problem);
    return bat_run<RealCoords>(problem, cfg, rng, "ba");
}

RunRecord run_qba(const Problem& problem, const AlgoConfig& cfg, RandomStream& rng) {
    validate_config(AlgorithmId::Qba, cfg, problem);
    return bat_run<QuatCoords>(problem, cfg, rng, "qba");
}

} // namespace qbat
