#include <vector>

#include "qbat/algorithm.hpp"
#include "run_support.hpp"

namespace qbat {

std::vector<double> de_mutant(std::span<const double> x1, std::span<const double> x2,
                              std::span<const double> x3, double weight) {
    std::vector<double> v(x1.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
        v[j] = x1[j] + weight * (x2[j] - x3[j]);
    }
    return v;
}

std::vector<double> de_crossover(std::span<const double> target,
                                 std::span<const double> mutant, double cr,
                                 std::size_t forced, RandomStream& rng) {
    std::vector<double> trial(target.size());
    for (std::size_t j = 0; j < trial.size(); ++j) {
        const double draw = rng.next();
        trial[j] = (draw < cr || j == forced) ? mutant[j] : target[j];
    }
    return trial;
}

namespace {

// Index draws reject by redrawing, one draw per attempt.
int distinct_index(RandomStream& rng, int n, std::initializer_list<int> taken) {
    for (;;) {
        const int v = rng.uniform_int(n);
        bool clash = false;
        for (int t : taken) clash |= (v == t);
        if (!clash) return v;
    }
}

} // namespace

// DE/rand/1/bin with synchronous (generation-based) replacement: trials are
// compared against the current population and the survivors form the next
// one. Per target the stream yields r1, r2, r3 (with redraws on clashes),
// the forced coordinate, then one crossover draw per coordinate.
RunRecord run_de(const Problem& problem, const AlgoConfig& cfg, RandomStream& rng) {
    validate_config(AlgorithmId::De, cfg, problem);

    const std::size_t dim = problem.dim;
    const int np = cfg.population;
    const auto& lo = problem.bounds.lower;
    const auto& hi = problem.bounds.upper;

    RunRecord rec;
    rec.algorithm = "de";
    rec.problem = problem.name;
    rec.encoding = cfg.encoding;

    detail::RunTracker tracker(cfg.resolved_max_evaluations(dim), cfg.resolved_cadence());

    struct Member {
        std::vector<double> position; // kept inside the bounds
        double fitness = 0.0;
    };

    std::vector<Member> population(np);
    for (auto& m : population) {
        m.position.resize(dim);
        for (std::size_t j = 0; j < dim; ++j) {
            m.position[j] = rng.uniform(lo[j], hi[j]);
        }
        m.fitness = problem.evaluate(m.position, rng);
        if (m.fitness <= tracker.best_fitness) {
            tracker.best_fitness = m.fitness;
            tracker.best_phenotype = m.position;
        }
        tracker.count_eval();
    }

    while (!tracker.exhausted()) {
        std::vector<Member> next = population;
        for (int i = 0; i < np; ++i) {
            const int r1 = distinct_index(rng, np, {i});
            const int r2 = distinct_index(rng, np, {i, r1});
            const int r3 = distinct_index(rng, np, {i, r1, r2});
            const std::size_t forced = static_cast<std::size_t>(rng.uniform_int(static_cast<int>(dim)));

            const auto mutant = de_mutant(population[r1].position, population[r2].position,
                                          population[r3].position, cfg.de.weight);
            auto trial = de_crossover(population[i].position, mutant, cfg.de.crossover, forced, rng);
            for (std::size_t j = 0; j < dim; ++j) {
                trial[j] = decode_real(trial[j], lo[j], hi[j]);
            }

            const double trial_fitness = problem.evaluate(trial, rng);
            if (trial_fitness <= population[i].fitness) {
                if (trial_fitness <= tracker.best_fitness) {
                    tracker.best_fitness = trial_fitness;
                    tracker.best_phenotype = trial;
                }
                next[i].position = std::move(trial);
                next[i].fitness = trial_fitness;
            }
            tracker.count_eval();
        }
        population = std::move(next);
    }

    tracker.finish(rec);
    return rec;
}

} // namespace qbat
