#include <cmath>
#include <vector>

#include "qbat/algorithm.hpp"
#include "run_support.hpp"

namespace qbat {

std::vector<double> abc_selection_weights(std::span<const double> fitness) {
    std::vector<double> w(fitness.size());
    double total = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double f = fitness[i];
        w[i] = f >= 0.0 ? 1.0 / (1.0 + f) : 1.0 + std::abs(f);
        total += w[i];
    }
    for (auto& v : w) v /= total;
    return w;
}

namespace {

int roulette(std::span<const double> weights, double u) {
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        acc += weights[i];
        if (u < acc) return static_cast<int>(i);
    }
    return static_cast<int>(weights.size()) - 1;
}

} // namespace

// Artificial bee colony over population/2 food sources. Employed and
// onlooker moves draw, in order: the source (onlookers only, one roulette
// draw), the coordinate, the partner (redrawing on clashes), then phi.
// Every source whose trial counter exceeds the limit is re-initialized in
// the scout phase. All three phases stop early once the evaluation budget
// is spent.
RunRecord run_abc(const Problem& problem, const AlgoConfig& cfg, RandomStream& rng) {
    validate_config(AlgorithmId::Abc, cfg, problem);

    const std::size_t dim = problem.dim;
    const int sources = cfg.population / 2;
    const long limit = cfg.resolved_trial_limit(dim);
    const auto& lo = problem.bounds.lower;
    const auto& hi = problem.bounds.upper;

    RunRecord rec;
    rec.algorithm = "abc";
    rec.problem = problem.name;
    rec.encoding = cfg.encoding;

    detail::RunTracker tracker(cfg.resolved_max_evaluations(dim), cfg.resolved_cadence());

    struct Source {
        std::vector<double> position;
        double fitness = 0.0;
        long trials = 0;
    };

    std::vector<Source> colony(sources);
    auto reinitialize = [&](Source& s) {
        s.position.resize(dim);
        for (std::size_t j = 0; j < dim; ++j) {
            s.position[j] = rng.uniform(lo[j], hi[j]);
        }
        s.fitness = problem.evaluate(s.position, rng);
        s.trials = 0;
        if (s.fitness <= tracker.best_fitness) {
            tracker.best_fitness = s.fitness;
            tracker.best_phenotype = s.position;
        }
        tracker.count_eval();
    };

    for (auto& s : colony) reinitialize(s);

    auto neighbour_move = [&](int i) {
        Source& s = colony[i];
        const std::size_t j = static_cast<std::size_t>(rng.uniform_int(static_cast<int>(dim)));
        int k;
        do {
            k = rng.uniform_int(sources);
        } while (k == i);
        const double phi = rng.uniform(-1.0, 1.0);

        std::vector<double> candidate = s.position;
        candidate[j] = decode_real(abc_candidate_coord(s.position[j], colony[k].position[j], phi),
                                   lo[j], hi[j]);
        // Strict improvement only: a candidate that merely ties the parent
        // still counts as a failed trial, so stalled sources age toward the
        // scout trigger.
        const double candidate_fitness = problem.evaluate(candidate, rng);
        if (candidate_fitness < s.fitness) {
            if (candidate_fitness <= tracker.best_fitness) {
                tracker.best_fitness = candidate_fitness;
                tracker.best_phenotype = candidate;
            }
            s.position = std::move(candidate);
            s.fitness = candidate_fitness;
            s.trials = 0;
        } else {
            ++s.trials;
        }
        tracker.count_eval();
    };

    while (!tracker.exhausted()) {
        for (int i = 0; i < sources && !tracker.exhausted(); ++i) {
            neighbour_move(i);
        }

        std::vector<double> fitness(sources);
        for (int i = 0; i < sources; ++i) fitness[i] = colony[i].fitness;
        const auto weights = abc_selection_weights(fitness);
        for (int n = 0; n < sources && !tracker.exhausted(); ++n) {
            neighbour_move(roulette(weights, rng.next()));
        }

        for (int i = 0; i < sources && !tracker.exhausted(); ++i) {
            if (colony[i].trials > limit) {
                reinitialize(colony[i]);
            }
        }
    }

    tracker.finish(rec);
    return rec;
}

} // namespace qbat
