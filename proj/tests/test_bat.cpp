#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "qbat/algorithm.hpp"
#include "test_support.hpp"

using qbat::AlgoConfig;
using qbat::AlgorithmId;
using qbat::EncodingMode;
using qbat::Problem;
using qbat::RunRecord;
using qbat::testing::ReplayStream;

namespace {

AlgoConfig tiny_bat_config(int population, long max_evaluations) {
    AlgoConfig cfg;
    cfg.population = population;
    cfg.max_evaluations = max_evaluations;
    return cfg;
}

} // namespace

TEST_CASE("pulse rate control law") {
    // target * (1 - exp(-growth * t)): zero before the first accepted move,
    // then climbing toward the target.
    CHECK(qbat::bat_pulse_rate(0.5, 0.9, 0) == 0.0);
    double prev = 0.0;
    for (long t = 1; t <= 50; ++t) {
        const double r = qbat::bat_pulse_rate(0.5, 0.9, t);
        CHECK(r > prev);
        CHECK(r <= 0.5);
        prev = r;
    }
    CHECK(qbat::bat_pulse_rate(0.5, 0.9, 1000) == doctest::Approx(0.5));
}

TEST_CASE("config validation rejects broken parameters") {
    const Problem sphere = qbat::make_sphere(2);

    AlgoConfig cfg = tiny_bat_config(4, 8);
    cfg.bat.frequency_min = 2.0;
    cfg.bat.frequency_max = 0.0;
    CHECK_THROWS_AS(qbat::validate_config(AlgorithmId::Ba, cfg, sphere), std::invalid_argument);

    cfg = tiny_bat_config(4, 8);
    cfg.bat.loudness_decay = 1.0;
    CHECK_THROWS_AS(qbat::validate_config(AlgorithmId::Ba, cfg, sphere), std::invalid_argument);

    cfg = tiny_bat_config(4, 8);
    cfg.encoding = EncodingMode::QuatNorm;
    CHECK_THROWS_AS(qbat::validate_config(AlgorithmId::Ba, cfg, sphere), std::invalid_argument);

    cfg = tiny_bat_config(4, 8);
    cfg.encoding = EncodingMode::Real;
    CHECK_THROWS_AS(qbat::validate_config(AlgorithmId::Qba, cfg, sphere), std::invalid_argument);

    cfg = tiny_bat_config(0, 8);
    CHECK_THROWS_AS(qbat::validate_config(AlgorithmId::Ba, cfg, sphere), std::invalid_argument);

    // Violations surface before any evaluation happens.
    ReplayStream no_draws({});
    cfg = tiny_bat_config(4, 8);
    cfg.bat.pulse_growth = -1.0;
    CHECK_THROWS_AS(qbat::run_ba(sphere, cfg, no_draws), std::invalid_argument);
    CHECK(no_draws.consumed() == 0);
}

// Two fully hand-checked generations, two bats, one coordinate, on the
// sphere. Every tape value is a dyadic rational and the box is [-100, 100],
// so each quantity below is exact in double arithmetic. Generation 1
// exercises the local walk; generation 2 takes the no-walk path (the pulse
// rates have grown past the decision draws), exposing the accumulated
// velocities in the evaluated candidates.
TEST_CASE("two recorded generations of ba match the hand computation") {
    const Problem sphere = qbat::make_sphere(1);
    AlgoConfig cfg = tiny_bat_config(2, 6);

    ReplayStream tape({
        0.25, 0.625, // init positions: -50 (fitness 2500) and 25 (fitness 625, best)
        // generation 1, mean loudness 1
        0.03125,     // bat 0: frequency draw -> f = 0.0625, v = -75 * 0.0625 = -4.6875
        0.75,        // bat 0: walk decision (> pulse rate 0, walks)
        0.75,        // bat 0: walk step -> eps = 0.5, candidate 25 + 0.5 = 25.5
        0.25,        // bat 0: acceptance (650.25 <= 2500, accepted; not a best)
        0.75,        // bat 1: frequency draw -> f = 1.5, v = (25 - 25) * 1.5 = 0
        0.5,         // bat 1: walk decision
        0.125,       // bat 1: walk step -> eps = -0.75, candidate 25 - 0.75 = 24.25
        0.6875,      // bat 1: acceptance (588.0625, accepted, new best)
        // generation 2; pulse rates are now 0.5 * (1 - exp(-0.9)) ~ 0.297
        0.5,         // bat 0: frequency draw -> f = 1, v = -4.6875 + 1.25 = -3.4375
        0.125,       // bat 0: walk decision, 0.125 <= pulse rate -> pull candidate
        0.5,         // bat 0: acceptance (25.5 - 3.4375 = 22.0625, fitness
                     //        486.75390625 <= 650.25, accepted, new best)
        0.25,        // bat 1: frequency draw -> f = 0.5, v = (24.25 - 22.0625) / 2
        0.125,       // bat 1: walk decision -> pull candidate 25.34375
        0.875,       // bat 1: acceptance (642.3056640625 > 588.0625, rejected)
    });

    const RunRecord rec = qbat::run_ba(sphere, cfg, tape);
    CHECK(tape.remaining() == 0);

    REQUIRE(rec.trace.size() == 3);
    CHECK(rec.trace[0] == std::pair<long, double>{2, 625.0});
    CHECK(rec.trace[1].first == 4);
    CHECK(std::abs(rec.trace[1].second - 588.0625) <= 1e-12);
    CHECK(rec.trace[2].first == 6);
    CHECK(std::abs(rec.trace[2].second - 486.75390625) <= 1e-12);
    CHECK(rec.evaluations == 6);
    CHECK(std::abs(rec.final_fitness - 486.75390625) <= 1e-12);
    REQUIRE(rec.final_phenotype.size() == 1);
    CHECK(std::abs(rec.final_phenotype[0] - 22.0625) <= 1e-12);
    CHECK(rec.algorithm == "ba");
    CHECK(rec.encoding == EncodingMode::Real);
}

// Mirror of the run above in quaternion space. Components again land on
// dyadic rationals: the initial genotypes are (0,0,0,25) with norm 25 and
// (30,40,0,0) with norm 50.
TEST_CASE("one recorded generation of qba matches the hand computation") {
    const Problem sphere = qbat::make_sphere(1);
    AlgoConfig cfg = tiny_bat_config(2, 4);
    cfg.encoding = EncodingMode::QuatNorm;

    ReplayStream tape({
        0.5, 0.5, 0.5, 0.75,     // init bat 0: (0, 0, 0, 25), decodes to 25
        0.8, 0.9, 0.5, 0.5,      // init bat 1: (30, 40, 0, 0), decodes to 50
        0.5,                     // bat 0: frequency -> 1
        0.625,                   // bat 0: walk decision
        0.75, 0.5, 0.5, 0.5,     // bat 0: walk quaternion (0.5, 0, 0, 0)
        0.25,                    // bat 0: acceptance draw
        0.25,                    // bat 1: frequency -> 0.5
        0.8125,                  // bat 1: walk decision
        0.5, 0.75, 0.5, 0.5,     // bat 1: walk quaternion (0, 0.5, 0, 0)
        0.375,                   // bat 1: acceptance draw
    });

    const RunRecord rec = qbat::run_qba(sphere, cfg, tape);
    CHECK(tape.remaining() == 0);

    // Init: decoded 25 (f 625) and 50 (f 2500); best 625 at (0,0,0,25).
    // Generation 1, mean loudness 1:
    //   bat 0: pull term is the zero quaternion (it is the best), walk
    //          candidate (0.5, 0, 0, 25), norm sqrt(625.25), fitness
    //          625.25 > 625 -> rejected.
    //   bat 1: velocity 0.5 * ((30,40,0,0) - (0,0,0,25)) = (15,20,0,-12.5),
    //          pull candidate (45,60,0,-12.5), replaced by the walk
    //          (0, 0.5, 0, 25); fitness 625.25 <= 2500 -> accepted, still
    //          not a new best.
    REQUIRE(rec.trace.size() == 2);
    CHECK(rec.trace[0].first == 2);
    CHECK(rec.trace[0].second == 625.0);
    CHECK(rec.trace[1].first == 4);
    CHECK(rec.trace[1].second == 625.0);
    CHECK(rec.evaluations == 4);
    CHECK(rec.final_fitness == 625.0);
    REQUIRE(rec.final_phenotype.size() == 1);
    CHECK(rec.final_phenotype[0] == 25.0);
    CHECK(rec.algorithm == "qba");
    CHECK(rec.encoding == EncodingMode::QuatNorm);
}

TEST_CASE("a budget of one population is exactly the initialization") {
    for (auto id : {AlgorithmId::Ba, AlgorithmId::Qba}) {
        AlgoConfig cfg = tiny_bat_config(6, 6);
        cfg.encoding = id == AlgorithmId::Qba ? EncodingMode::QuatShiftedNorm : EncodingMode::Real;
        const RunRecord rec = qbat::run_seeded(id, qbat::make_rastrigin(3), cfg, 99);
        CHECK(rec.evaluations == 6);
        REQUIRE(rec.trace.size() == 1);
        CHECK(rec.trace[0].first == 6);
        CHECK(rec.trace[0].second == rec.final_fitness);
    }
}

TEST_CASE("identical seeds reproduce runs bit for bit") {
    for (auto id : {AlgorithmId::Ba, AlgorithmId::Qba}) {
        AlgoConfig cfg = tiny_bat_config(8, 400);
        cfg.encoding = id == AlgorithmId::Qba ? EncodingMode::QuatNorm : EncodingMode::Real;
        const Problem p = qbat::make_ackley(4);
        const RunRecord a = qbat::run_seeded(id, p, cfg, 1234);
        const RunRecord b = qbat::run_seeded(id, p, cfg, 1234);
        CHECK(a.trace == b.trace);
        CHECK(a.final_fitness == b.final_fitness);
        CHECK(a.final_phenotype == b.final_phenotype);
        CHECK(a.evaluations == b.evaluations);

        const RunRecord c = qbat::run_seeded(id, p, cfg, 1235);
        CHECK(a.trace != c.trace);
    }
}

TEST_CASE("best-so-far traces never worsen and stay feasible") {
    for (auto id : {AlgorithmId::Ba, AlgorithmId::Qba}) {
        for (auto mode : {EncodingMode::QuatNorm, EncodingMode::QuatShiftedNorm}) {
            if (id == AlgorithmId::Ba && mode != EncodingMode::QuatNorm) continue;
            AlgoConfig cfg = tiny_bat_config(10, 1500);
            cfg.encoding = id == AlgorithmId::Ba ? EncodingMode::Real : mode;
            const Problem p = qbat::make_rastrigin(5);
            const RunRecord rec = qbat::run_seeded(id, p, cfg, 7);

            CHECK(rec.evaluations <= 1500 + 10);
            REQUIRE(!rec.trace.empty());
            for (std::size_t i = 1; i < rec.trace.size(); ++i) {
                CHECK(rec.trace[i].second <= rec.trace[i - 1].second);
            }
            CHECK(rec.final_fitness == rec.trace.back().second);
            for (std::size_t j = 0; j < p.dim; ++j) {
                CHECK(rec.final_phenotype[j] >= p.bounds.lower[j]);
                CHECK(rec.final_phenotype[j] <= p.bounds.upper[j]);
            }
        }
    }
}

TEST_CASE("frequency endpoints reach f_min and f_max") {
    CHECK(qbat::bat_frequency(0.0, 2.0, 0.0) == 0.0);
    CHECK(qbat::bat_frequency(0.0, 2.0, 1.0) == 2.0);
    CHECK(qbat::bat_frequency(-1.0, 3.0, 0.5) == 1.0);

    // Observable through a run with the walks suppressed (decision draws of
    // 0.0 are never above the zero pulse rate): bat 1 sits at -10 with the
    // best at -20, so its pull candidate is -10 + f * 10 and only f = 0.5
    // lands on -5 with fitness 25 as the new best.
    const Problem sphere = qbat::make_sphere(1);
    AlgoConfig cfg = tiny_bat_config(2, 4);
    cfg.bat.pulse_rate_target = 0.0;

    ReplayStream tape({
        0.4, 0.45,   // init: -20 (f 400, the best), -10 (f 100)
        0.0,         // bat 0: frequency draw 0 -> f = f_min = 0
        0.0,         // bat 0: no walk; candidate -20 re-accepted
        0.5,         // bat 0: acceptance draw
        0.25,        // bat 1: frequency draw -> f = 0.5
        0.0,         // bat 1: no walk; candidate -10 + 0.5 * 10 = -5
        0.5,         // bat 1: acceptance draw (25 <= 100, new best)
    });
    const RunRecord rec = qbat::run_ba(sphere, cfg, tape);
    CHECK(tape.remaining() == 0);
    CHECK(rec.final_fitness == 25.0);
    REQUIRE(rec.final_phenotype.size() == 1);
    CHECK(rec.final_phenotype[0] == -5.0);
    CHECK(rec.trace == std::vector<std::pair<long, double>>{{2, 100.0}, {4, 25.0}});
}
