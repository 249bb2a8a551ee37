#pragma once

#include <limits>
#include <vector>

#include "qbat/algorithm.hpp"

namespace qbat::detail {

// Evaluation budget, best-so-far bookkeeping and checkpointing shared by the
// optimizers. count_eval() must be called once per objective evaluation,
// after any best-so-far update triggered by that evaluation, so checkpoints
// see settled state. Evaluations advance one at a time, so the trace lands
// exactly on the cadence multiples.
struct RunTracker {
    long max_evaluations;
    long cadence;
    long evaluations = 0;
    double best_fitness = std::numeric_limits<double>::infinity();
    std::vector<double> best_phenotype;
    std::vector<std::pair<long, double>> trace;

    RunTracker(long max_evals, long cad) : max_evaluations(max_evals), cadence(cad) {}

    bool exhausted() const { return evaluations >= max_evaluations; }

    void count_eval() {
        ++evaluations;
        if (evaluations % cadence == 0) {
            trace.emplace_back(evaluations, best_fitness);
        }
    }

    void finish(RunRecord& rec) const {
        rec.trace = trace;
        rec.final_fitness = best_fitness;
        rec.final_phenotype = best_phenotype;
        rec.evaluations = evaluations;
    }
};

} // namespace qbat::detail
