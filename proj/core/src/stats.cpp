#include "qbat/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace qbat {

SampleSummary summarize(std::span<const double> sample) {
    if (sample.empty()) {
        throw std::invalid_argument("summarize: empty sample");
    }
    SampleSummary s;
    s.count = sample.size();

    double sum = 0.0;
    for (double v : sample) sum += v;
    s.mean = sum / static_cast<double>(s.count);

    double ss = 0.0;
    for (double v : sample) ss += (v - s.mean) * (v - s.mean);
    s.stddev = s.count > 1 ? std::sqrt(ss / static_cast<double>(s.count - 1)) : 0.0;

    std::vector<double> sorted(sample.begin(), sample.end());
    std::sort(sorted.begin(), sorted.end());
    s.best = sorted.front();
    s.worst = sorted.back();
    const std::size_t h = s.count / 2;
    s.median = s.count % 2 == 1 ? sorted[h] : (sorted[h - 1] + sorted[h]) / 2.0;
    return s;
}

namespace {

struct Ranking {
    double rank_sum_a = 0.0; // rank sum of the first sample, average ranks on ties
    double tie_term = 0.0;   // sum of t^3 - t over tie groups
    bool has_ties = false;
};

Ranking rank_first_sample(std::span<const double> a, std::span<const double> b) {
    struct Tagged {
        double value;
        bool from_a;
    };
    std::vector<Tagged> all;
    all.reserve(a.size() + b.size());
    for (double v : a) all.push_back({v, true});
    for (double v : b) all.push_back({v, false});
    std::sort(all.begin(), all.end(), [](const Tagged& l, const Tagged& r) { return l.value < r.value; });

    Ranking out;
    std::size_t i = 0;
    while (i < all.size()) {
        std::size_t j = i;
        while (j + 1 < all.size() && all[j + 1].value == all[i].value) ++j;
        const double t = static_cast<double>(j - i + 1);
        const double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        if (t > 1.0) {
            out.has_ties = true;
            out.tie_term += t * t * t - t;
        }
        for (std::size_t k = i; k <= j; ++k) {
            if (all[k].from_a) out.rank_sum_a += avg_rank;
        }
        i = j + 1;
    }
    return out;
}

void require_nonempty(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) {
        throw std::invalid_argument("ranksum: both samples must be nonempty");
    }
}

} // namespace

TestResult ranksum_exact(std::span<const double> a, std::span<const double> b) {
    require_nonempty(a, b);
    const std::size_t na = a.size();
    const std::size_t nb = b.size();
    const std::size_t n = na + nb;
    if (n > 20) {
        throw std::invalid_argument("ranksum_exact: combined sample too large to enumerate");
    }
    const Ranking r = rank_first_sample(a, b);
    if (r.has_ties) {
        throw std::invalid_argument("ranksum_exact: tied values; use the normal approximation");
    }

    // Tie-free ranks are the integers 1..n, so everything stays integral:
    // compare 2*W against 2*mu = na*(n+1).
    const long w2_obs = static_cast<long>(2.0 * r.rank_sum_a + 0.5);
    const long mu2 = static_cast<long>(na) * static_cast<long>(n + 1);
    const long extremity = std::abs(w2_obs - mu2);

    std::uint64_t total = 0;
    std::uint64_t as_extreme = 0;
    // Gosper's hack over all na-subsets of the n ranks.
    const std::uint32_t limit = 1u << n;
    std::uint32_t mask = (1u << na) - 1;
    while (mask < limit) {
        long rank_sum2 = 0;
        for (std::size_t bit = 0; bit < n; ++bit) {
            if (mask & (1u << bit)) rank_sum2 += 2 * static_cast<long>(bit + 1);
        }
        ++total;
        if (std::abs(rank_sum2 - mu2) >= extremity) ++as_extreme;

        const std::uint32_t c = mask & (0u - mask);
        const std::uint32_t rpl = mask + c;
        mask = rpl | (((mask ^ rpl) >> 2) / c);
    }

    TestResult out;
    out.statistic = r.rank_sum_a;
    out.p_value = static_cast<double>(as_extreme) / static_cast<double>(total);
    out.method = "ranksum-exact";
    return out;
}

TestResult ranksum_normal(std::span<const double> a, std::span<const double> b) {
    require_nonempty(a, b);
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    const double n = na + nb;
    const Ranking r = rank_first_sample(a, b);

    const double mu = na * (n + 1.0) / 2.0;
    const double variance = na * nb / 12.0 * ((n + 1.0) - r.tie_term / (n * (n - 1.0)));

    TestResult out;
    out.statistic = r.rank_sum_a;
    out.method = "ranksum-normal";
    if (variance <= 0.0) {
        out.p_value = 1.0; // all values identical: no evidence either way
        return out;
    }
    const double z = std::max(0.0, std::abs(r.rank_sum_a - mu) - 0.5) / std::sqrt(variance);
    out.p_value = std::min(1.0, std::erfc(z / std::sqrt(2.0)));
    return out;
}

TestResult ranksum(std::span<const double> a, std::span<const double> b) {
    require_nonempty(a, b);
    if (a.size() + b.size() <= 12 && !rank_first_sample(a, b).has_ties) {
        return ranksum_exact(a, b);
    }
    return ranksum_normal(a, b);
}

double mean_pairwise_distance(std::span<const std::vector<double>> points) {
    if (points.size() < 2) {
        throw std::invalid_argument("mean_pairwise_distance: need at least two points");
    }
    const std::size_t dim = points.front().size();
    for (const auto& p : points) {
        if (p.size() != dim) {
            throw std::invalid_argument("mean_pairwise_distance: points differ in dimension");
        }
    }
    double total = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            double ss = 0.0;
            for (std::size_t d = 0; d < dim; ++d) {
                const double diff = points[i][d] - points[j][d];
                ss += diff * diff;
            }
            total += std::sqrt(ss);
            ++pairs;
        }
    }
    return total / static_cast<double>(pairs);
}

double success_rate(std::span<const RunRecord> runs, double min_value, double epsilon) {
    if (runs.empty()) {
        throw std::invalid_argument("success_rate: no runs");
    }
    if (!(epsilon > 0.0)) {
        throw std::invalid_argument("success_rate: epsilon must be positive");
    }
    const std::string& problem = runs.front().problem;
    std::size_t hits = 0;
    for (const auto& r : runs) {
        if (r.problem != problem) {
            throw std::invalid_argument("success_rate: runs mix problems \"" + problem +
                                        "\" and \"" + r.problem + "\"");
        }
        if (r.final_fitness - min_value <= epsilon) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(runs.size());
}

} // namespace qbat
