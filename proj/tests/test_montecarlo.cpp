#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ealab/chain.hpp"
#include "ealab/montecarlo.hpp"

using namespace ealab;

TEST_CASE("estimates match known expectations") {
    {
        const EaConfig config = EaConfig::mutation_only(Algorithm::OnePlusOne, Problem::OneMax, MutationKind::OneBit);
        const EfhtEstimate est = estimate_efht(config, 1, 100000, 12345);
        CHECK(std::abs(est.mean - 0.5) <= 4 * est.stderr_mean);
        CHECK(est.censored == 0);
    }
    {
        const EaConfig config =
            EaConfig::mutation_only(Algorithm::OnePlusOneStrict, Problem::LeadingOnes, MutationKind::OneBit);
        const EfhtEstimate est = estimate_efht(config, 10, 100000, 777);
        CHECK(std::abs(est.mean - 50.0) <= 4 * est.stderr_mean);
    }
}

TEST_CASE("single run from an optimal start is degenerate") {
    const EaConfig config = EaConfig::mutation_only(Algorithm::OnePlusOne, Problem::OneMax, MutationKind::OneBit);
    // find a master seed whose first derived trial starts at the optimum
    std::uint64_t master = 0;
    while (true) {
        Rng rng(Rng::derive_seed(master, 0));
        if (BitString::random(3, rng) == BitString::all_ones(3)) break;
        ++master;
    }
    const EfhtEstimate est = estimate_efht(config, 3, 1, master);
    CHECK(est.mean == 0.0);
    CHECK(est.stderr_mean == 0.0);
    CHECK(est.degenerate);
}

TEST_CASE("estimates are bit-identical across worker counts") {
    const EaConfig config = EaConfig::with_crossover(Algorithm::TwoColonTwo, Problem::LeadingOnes,
                                                     MutationKind::OneBit, CrossoverKind::OneBitX, 0.5);
    McOptions one, two, eight;
    one.threads = 1;
    two.threads = 2;
    eight.threads = 8;
    const EfhtEstimate a = estimate_efht(config, 8, 20000, 99, one);
    const EfhtEstimate b = estimate_efht(config, 8, 20000, 99, two);
    const EfhtEstimate c = estimate_efht(config, 8, 20000, 99, eight);
    CHECK(a.mean == b.mean);
    CHECK(b.mean == c.mean);
    CHECK(a.stderr_mean == b.stderr_mean);
    CHECK(b.stderr_mean == c.stderr_mean);
}

TEST_CASE("the thread-count environment override never changes results") {
    const EaConfig config = EaConfig::mutation_only(Algorithm::OnePlusOne, Problem::OneMax, MutationKind::OneBit);
    McOptions serial;
    serial.threads = 1;
    const EfhtEstimate base = estimate_efht(config, 6, 5000, 31, serial);
    setenv("EA_LAB_THREADS", "3", 1);
    const EfhtEstimate env = estimate_efht(config, 6, 5000, 31);
    unsetenv("EA_LAB_THREADS");
    CHECK(base.mean == env.mean);
    CHECK(base.stderr_mean == env.stderr_mean);
}

TEST_CASE("doubling runs shrinks the standard error") {
    const EaConfig config = EaConfig::mutation_only(Algorithm::TwoColonTwo, Problem::OneMax, MutationKind::OneBit);
    const EfhtEstimate small = estimate_efht(config, 10, 20000, 5);
    const EfhtEstimate big = estimate_efht(config, 10, 40000, 6);
    const double factor = small.stderr_mean / big.stderr_mean;
    CHECK(factor >= 1.2);
    CHECK(factor <= 1.7);
}

TEST_CASE("estimates agree with exact chain values at small n") {
    std::vector<EaConfig> configs = {
        EaConfig::mutation_only(Algorithm::OnePlusOne, Problem::OneMax, MutationKind::OneBit),
        EaConfig::mutation_only(Algorithm::OnePlusOneStrict, Problem::LeadingOnes, MutationKind::Bitwise),
        EaConfig::mutation_only(Algorithm::TwoColonTwo, Problem::LeadingOnes, MutationKind::OneBit),
        EaConfig::with_crossover(Algorithm::TwoColonTwo, Problem::OneMax, MutationKind::OneBit,
                                 CrossoverKind::OneBitX, 0.5),
        EaConfig::with_crossover(Algorithm::TwoColonTwo, Problem::LeadingOnes, MutationKind::Bitwise,
                                 CrossoverKind::Uniform, 0.3, TiePolicy::PreferOffspring),
        EaConfig::with_crossover(Algorithm::TwoPlusTwo, Problem::LeadingOnes, MutationKind::OneBit,
                                 CrossoverKind::OnePoint, 0.5),
        EaConfig::with_crossover(Algorithm::TwoPlusTwo, Problem::OneMax, MutationKind::Bitwise,
                                 CrossoverKind::Uniform, 0.7),
        EaConfig::with_strategy(Problem::LeadingOnes, Strategy::MR1),
        EaConfig::with_strategy(Problem::LeadingOnes, Strategy::MR2),
        EaConfig::with_strategy(Problem::OneMax, Strategy::MR3),
    };
    std::uint64_t seed = 1000;
    for (const auto& config : configs) {
        const int n = 4;
        const double exact = efht_uniform(build_chain(config, n));
        const EfhtEstimate est = estimate_efht(config, n, 100000, seed++);
        INFO(config.fingerprint(), " exact=", exact, " est=", est.mean, " se=", est.stderr_mean);
        CHECK(std::abs(est.mean - exact) <= 4 * est.stderr_mean);
    }
}

TEST_CASE("comparison statistics") {
    CHECK(gap_statistic(120.0, 100.0, 10, 0.5) == doctest::Approx(2.0));
    CHECK(gap_statistic(100.0, 100.0, 10, 0.5) == 0.0);
    CHECK_THROWS_AS(gap_statistic(120.0, 100.0, 10, 0.0), std::domain_error);
    CHECK(ratio_statistic(120.0, 100.0, 0.5) == doctest::Approx(0.6));
    CHECK(ratio_statistic(120.0, 100.0, 0.0) == doctest::Approx(1.2));
    CHECK_THROWS_AS(ratio_statistic(120.0, 0.0, 0.5), std::domain_error);
}

TEST_CASE("sweep grids") {
    const EaConfig base = EaConfig::with_crossover(Algorithm::TwoColonTwo, Problem::LeadingOnes,
                                                   MutationKind::OneBit, CrossoverKind::OneBitX, 0.5);
    const auto records = sweep(base, {10}, {0.0, 0.5}, {}, 1000, 42);
    REQUIRE(records.size() == 3);  // baseline + two pc points
    CHECK(records[0].pc_or_strategy == "mut");
    CHECK_FALSE(records[1].gap.has_value());  // pc = 0 has no gap statistic
    CHECK(records[2].gap.has_value());
    CHECK(records[2].ratio.has_value());

    const auto again = sweep(base, {10}, {0.0, 0.5}, {}, 1000, 42);
    for (std::size_t i = 0; i < records.size(); ++i) {
        CHECK(records[i].estimate.mean == again[i].estimate.mean);
        CHECK(records[i].estimate.stderr_mean == again[i].estimate.stderr_mean);
    }

    // any grid subset reproduces the same point values
    const auto wide = sweep(base, {10, 20}, {0.5}, {Strategy::MR2}, 1000, 42);
    CHECK(wide[0].estimate.mean == records[0].estimate.mean);
    bool found_strategy = false;
    for (const auto& r : wide)
        if (r.pc_or_strategy == "mr2") {
            found_strategy = true;
            CHECK(r.estimate.runs == 1000);
        }
    CHECK(found_strategy);
}
