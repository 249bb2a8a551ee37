#pragma once

#include <cstdint>
#include <random>

namespace qbat {

/// Source of uniform draws on [0, 1). Every random decision in the library
/// flows through this interface, one draw at a time, so that a run can be
/// reproduced from its seed or replayed from a recorded tape.
class RandomStream {
public:
    virtual ~RandomStream() = default;

    /// Next uniform draw in [0, 1).
    virtual double next() = 0;

    double uniform(double lo, double hi) { return lo + next() * (hi - lo); }

    /// Uniform integer in [0, n).
    int uniform_int(int n) {
        const int v = static_cast<int>(next() * n);
        return v < n ? v : n - 1;
    }
};

/// Stream backed by std::mt19937_64. The engine's output sequence is fixed
/// by the standard and the 53-bit mapping below is a single shift-and-scale,
/// so a given seed produces the same draws on every platform.
class Mt64Stream final : public RandomStream {
public:
    explicit Mt64Stream(std::uint64_t seed) : engine_(seed) {}

    double next() override { return (engine_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

} // namespace qbat
