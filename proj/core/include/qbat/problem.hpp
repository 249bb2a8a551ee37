#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "qbat/encoding.hpp"
#include "qbat/rng.hpp"

namespace qbat {

/// A box-constrained minimization benchmark with a known optimum. The
/// objective receives the caller's random stream; only the noisy quartic
/// actually draws from it, everything else is deterministic.
struct Problem {
    std::string name;
    std::size_t dim = 0;
    BoundsBox bounds;
    double min_value = 0.0;            ///< f at the known minimizer
    std::vector<double> minimizer;     ///< one known global minimizer
    std::function<double(std::span<const double>, RandomStream&)> objective;

    /// Evaluates the objective. The point must match the problem dimension
    /// and lie inside the bounds; the optimizers always decode first, so a
    /// violation here is an internal bug and throws.
    double evaluate(std::span<const double> x, RandomStream& rng) const;
};

// Deterministic objective values, usable directly as test oracles. For the
// quartic, quartic_core is the noise-free part.
double sphere_value(std::span<const double> x);
double rosenbrock_value(std::span<const double> x);
double rastrigin_value(std::span<const double> x);
double griewank_value(std::span<const double> x);
double ackley_value(std::span<const double> x);
double schwefel226_value(std::span<const double> x);
double schwefel12_value(std::span<const double> x);
double schwefel222_value(std::span<const double> x);
double zakharov_value(std::span<const double> x);
double quartic_core(std::span<const double> x);

Problem make_sphere(std::size_t dim);
Problem make_rosenbrock(std::size_t dim);
Problem make_rastrigin(std::size_t dim);
Problem make_griewank(std::size_t dim);
Problem make_ackley(std::size_t dim);
Problem make_schwefel226(std::size_t dim);
Problem make_schwefel12(std::size_t dim);
Problem make_schwefel222(std::size_t dim);
Problem make_zakharov(std::size_t dim);
/// De Jong's quartic with one uniform[0,1) noise draw added per evaluation.
Problem make_quartic(std::size_t dim);

/// The ten-function benchmark suite at the given dimension, in a fixed order.
std::vector<Problem> suite(std::size_t dim = 10);

/// Looks a problem up in suite(dim) by name; throws std::invalid_argument
/// naming the problem if it is unknown.
Problem problem_by_name(std::string_view name, std::size_t dim);

} // namespace qbat
