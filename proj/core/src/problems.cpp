#include "qbat/problem.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qbat {

double Problem::evaluate(std::span<const double> x, RandomStream& rng) const {
    if (x.size() != dim) {
        throw std::invalid_argument("evaluate(" + name + "): point dimension " +
                                    std::to_string(x.size()) + " does not match " +
                                    std::to_string(dim));
    }
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (!(x[j] >= bounds.lower[j] && x[j] <= bounds.upper[j])) {
            throw std::invalid_argument("evaluate(" + name + "): coordinate " +
                                        std::to_string(j) + " is outside the bounds box");
        }
    }
    return objective(x, rng);
}

double sphere_value(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
}

double rosenbrock_value(std::span<const double> x) {
    double s = 0.0;
    for (std::size_t j = 0; j + 1 < x.size(); ++j) {
        const double a = x[j + 1] - x[j] * x[j];
        const double b = 1.0 - x[j];
        s += 100.0 * a * a + b * b;
    }
    return s;
}

double rastrigin_value(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) {
        s += v * v - 10.0 * std::cos(2.0 * std::numbers::pi * v) + 10.0;
    }
    return s;
}

double griewank_value(std::span<const double> x) {
    double sum = 0.0;
    double prod = 1.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        sum += x[j] * x[j];
        prod *= std::cos(x[j] / std::sqrt(static_cast<double>(j + 1)));
    }
    return sum / 4000.0 - prod + 1.0;
}

double ackley_value(std::span<const double> x) {
    const double n = static_cast<double>(x.size());
    double sq = 0.0;
    double cs = 0.0;
    for (double v : x) {
        sq += v * v;
        cs += std::cos(2.0 * std::numbers::pi * v);
    }
    return -20.0 * std::exp(-0.2 * std::sqrt(sq / n)) - std::exp(cs / n) + 20.0 +
           std::numbers::e;
}

double schwefel226_value(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * std::sin(std::sqrt(std::abs(v)));
    return -s;
}

double schwefel12_value(std::span<const double> x) {
    double s = 0.0;
    double prefix = 0.0;
    for (double v : x) {
        prefix += v;
        s += prefix * prefix;
    }
    return s;
}

double schwefel222_value(std::span<const double> x) {
    double sum = 0.0;
    double prod = 1.0;
    for (double v : x) {
        sum += std::abs(v);
        prod *= std::abs(v);
    }
    return sum + prod;
}

double zakharov_value(std::span<const double> x) {
    double sq = 0.0;
    double lin = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        sq += x[j] * x[j];
        lin += 0.5 * static_cast<double>(j + 1) * x[j];
    }
    return sq + lin * lin + lin * lin * lin * lin;
}

double quartic_core(std::span<const double> x) {
    double s = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double v = x[j] * x[j];
        s += static_cast<double>(j + 1) * v * v;
    }
    return s;
}

namespace {

Problem deterministic(std::string name, std::size_t dim, double lo, double hi,
                      double min_value, std::vector<double> minimizer,
                      double (*fn)(std::span<const double>)) {
    Problem p;
    p.name = std::move(name);
    p.dim = dim;
    p.bounds = BoundsBox::uniform(dim, lo, hi);
    p.min_value = min_value;
    p.minimizer = std::move(minimizer);
    p.objective = [fn](std::span<const double> x, RandomStream&) { return fn(x); };
    return p;
}

} // namespace

Problem make_sphere(std::size_t dim) {
    return deterministic("sphere", dim, -100.0, 100.0, 0.0, std::vector<double>(dim, 0.0),
                         sphere_value);
}

Problem make_rosenbrock(std::size_t dim) {
    return deterministic("rosenbrock", dim, -30.0, 30.0, 0.0, std::vector<double>(dim, 1.0),
                         rosenbrock_value);
}

Problem make_rastrigin(std::size_t dim) {
    return deterministic("rastrigin", dim, -5.12, 5.12, 0.0, std::vector<double>(dim, 0.0),
                         rastrigin_value);
}

Problem make_griewank(std::size_t dim) {
    return deterministic("griewank", dim, -600.0, 600.0, 0.0, std::vector<double>(dim, 0.0),
                         griewank_value);
}

Problem make_ackley(std::size_t dim) {
    return deterministic("ackley", dim, -32.0, 32.0, 0.0, std::vector<double>(dim, 0.0),
                         ackley_value);
}

Problem make_schwefel226(std::size_t dim) {
    // The minimizer is the published decimal approximation, so min_value is
    // a documented lower bound good to about 1e-4 per coordinate.
    return deterministic("schwefel226", dim, -500.0, 500.0,
                         -418.9829 * static_cast<double>(dim),
                         std::vector<double>(dim, 420.9687), schwefel226_value);
}

Problem make_schwefel12(std::size_t dim) {
    return deterministic("schwefel12", dim, -100.0, 100.0, 0.0, std::vector<double>(dim, 0.0),
                         schwefel12_value);
}

Problem make_schwefel222(std::size_t dim) {
    return deterministic("schwefel222", dim, -10.0, 10.0, 0.0, std::vector<double>(dim, 0.0),
                         schwefel222_value);
}

Problem make_zakharov(std::size_t dim) {
    return deterministic("zakharov", dim, -5.0, 10.0, 0.0, std::vector<double>(dim, 0.0),
                         zakharov_value);
}

Problem make_quartic(std::size_t dim) {
    Problem p;
    p.name = "quartic";
    p.dim = dim;
    p.bounds = BoundsBox::uniform(dim, -1.28, 1.28);
    p.min_value = 0.0; // of the noise-free core
    p.minimizer = std::vector<double>(dim, 0.0);
    p.objective = [](std::span<const double> x, RandomStream& rng) {
        return quartic_core(x) + rng.next();
    };
    return p;
}

std::vector<Problem> suite(std::size_t dim) {
    std::vector<Problem> out;
    out.reserve(10);
    out.push_back(make_sphere(dim));
    out.push_back(make_rosenbrock(dim));
    out.push_back(make_rastrigin(dim));
    out.push_back(make_griewank(dim));
    out.push_back(make_ackley(dim));
    out.push_back(make_schwefel226(dim));
    out.push_back(make_schwefel12(dim));
    out.push_back(make_schwefel222(dim));
    out.push_back(make_zakharov(dim));
    out.push_back(make_quartic(dim));
    return out;
}

Problem problem_by_name(std::string_view name, std::size_t dim) {
    for (auto& p : suite(dim)) {
        if (p.name == name) return p;
    }
    throw std::invalid_argument("unknown problem \"" + std::string(name) + "\"");
}

} // namespace qbat
