#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qbat/algorithm.hpp"

namespace qbat {

/// Descriptive summary of a fitness sample. stddev uses the n-1 denominator
/// (and is zero for a single observation); the median of an even count is
/// the midpoint average.
struct SampleSummary {
    std::size_t count = 0;
    double mean = 0.0;
    double stddev = 0.0;
    double median = 0.0;
    double best = 0.0;  // min
    double worst = 0.0; // max
};

SampleSummary summarize(std::span<const double> sample);

/// Two-sided Wilcoxon rank-sum result. statistic is the rank sum of the
/// first sample over the combined ranking (average ranks on ties).
struct TestResult {
    double statistic = 0.0;
    double p_value = 1.0;
    std::string method;
};

/// Exact test by enumerating every assignment of the combined ranks to the
/// first sample. Requires tie-free samples and a small combined size.
TestResult ranksum_exact(std::span<const double> a, std::span<const double> b);

/// Normal approximation with tie correction and continuity correction.
TestResult ranksum_normal(std::span<const double> a, std::span<const double> b);

/// Exact enumeration when the combined size is at most 12 and the values
/// are tie-free, the normal approximation otherwise.
TestResult ranksum(std::span<const double> a, std::span<const double> b);

/// Mean pairwise Euclidean distance of a population's phenotypes; zero only
/// when all points coincide. Needs at least two points.
double mean_pairwise_distance(std::span<const std::vector<double>> points);

/// Fraction of runs whose final fitness is within epsilon of the problem's
/// minimum. All records must come from one problem.
double success_rate(std::span<const RunRecord> runs, double min_value, double epsilon);

} // namespace qbat
