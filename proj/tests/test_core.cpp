#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "ealab/ea.hpp"
#include "ealab/names.hpp"
#include "ealab/operators.hpp"

using namespace ealab;

TEST_CASE("fitness functions") {
    CHECK(evaluate(Problem::LeadingOnes, BitString::from_string("1101")) == 2);
    CHECK(evaluate(Problem::OneMax, BitString::from_string("1101")) == 3);
    CHECK(evaluate(Problem::LeadingOnes, BitString::from_string("0111")) == 0);
    CHECK(evaluate(Problem::LeadingOnes, BitString::from_string("1111")) == 4);
    CHECK(is_optimal(Problem::OneMax, BitString::all_ones(5)));
    CHECK_FALSE(is_optimal(Problem::LeadingOnes, BitString::from_string("1110")));
}

TEST_CASE("code round trip and code-level fitness") {
    for (int n = 1; n <= 10; ++n) {
        for (std::uint64_t c = 0; c < (1ULL << n); ++c) {
            const BitString s = BitString::from_code(c, static_cast<std::size_t>(n));
            CHECK(s.code() == c);
            CHECK(evaluate(Problem::LeadingOnes, s) == lo_of_code(c, n));
            CHECK(evaluate(Problem::OneMax, s) == ones_of_code(c));
        }
    }
}

TEST_CASE("one-bit mutation flips exactly one position") {
    Rng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const BitString s = BitString::random(9, rng);
        const BitString o = mutate(MutationKind::OneBit, s, rng);
        int dist = 0;
        for (std::size_t p = 1; p <= s.size(); ++p) dist += s.bit(p) != o.bit(p);
        CHECK(dist == 1);
    }
}

TEST_CASE("one-bit mutation flip position is uniform") {
    const int n = 7;
    const int samples = 100000;
    Rng rng(11);
    const BitString s(static_cast<std::size_t>(n));
    std::vector<int> hits(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < samples; ++i) {
        const BitString o = mutate(MutationKind::OneBit, s, rng);
        for (int p = 1; p <= n; ++p)
            if (o.bit(static_cast<std::size_t>(p)) != s.bit(static_cast<std::size_t>(p)))
                ++hits[static_cast<std::size_t>(p - 1)];
    }
    const double expect = samples / static_cast<double>(n);
    const double se = std::sqrt(samples * (1.0 / n) * (1.0 - 1.0 / n));
    for (int p = 0; p < n; ++p) CHECK(std::abs(hits[static_cast<std::size_t>(p)] - expect) <= 4 * se);
}

TEST_CASE("bitwise mutation identity rate is (1-1/n)^n") {
    const int n = 8;
    const int samples = 100000;
    Rng rng(13);
    const BitString s = BitString::from_string("10110010");
    int unchanged = 0;
    for (int i = 0; i < samples; ++i)
        if (mutate(MutationKind::Bitwise, s, rng) == s) ++unchanged;
    const double p = std::pow(1.0 - 1.0 / n, n);
    const double se = std::sqrt(samples * p * (1.0 - p));
    CHECK(std::abs(unchanged - samples * p) <= 4 * se);
}

TEST_CASE("crossover only exchanges bits") {
    Rng rng(17);
    for (CrossoverKind kind : {CrossoverKind::OnePoint, CrossoverKind::Uniform, CrossoverKind::OneBitX,
                               CrossoverKind::OneDiffBit, CrossoverKind::FirstDiffBit, CrossoverKind::FirstDiffPoint}) {
        for (int trial = 0; trial < 300; ++trial) {
            const int n = 2 + static_cast<int>(rng.next_below(5));
            BitString s1 = BitString::random(static_cast<std::size_t>(n), rng);
            BitString s2 = BitString::random(static_cast<std::size_t>(n), rng);
            if (s1 == s2) s2.flip(1 + rng.next_below(static_cast<std::uint32_t>(n)));
            const auto [o1, o2] = crossover(kind, s1, s2, rng);
            for (int p = 1; p <= n; ++p) {
                const std::multiset<int> parents{s1.bit(static_cast<std::size_t>(p)), s2.bit(static_cast<std::size_t>(p))};
                const std::multiset<int> children{o1.bit(static_cast<std::size_t>(p)), o2.bit(static_cast<std::size_t>(p))};
                CHECK(parents == children);
            }
        }
    }
}

TEST_CASE("deterministic crossover kinds") {
    Rng rng(1);
    const auto [a, b] = crossover(CrossoverKind::FirstDiffBit, BitString::from_string("110"),
                                  BitString::from_string("101"), rng);
    CHECK(a.to_string() == "100");
    CHECK(b.to_string() == "111");

    const auto one_point = enumerate_crossover(CrossoverKind::OnePoint, BitString::from_string("111").code(),
                                               BitString::from_string("000").code(), 3);
    bool found_cut1 = false;
    for (const auto& o : one_point)
        if (BitString::from_code(o.o1, 3).to_string() == "100" && BitString::from_code(o.o2, 3).to_string() == "011") {
            found_cut1 = true;
            CHECK(o.prob == doctest::Approx(0.5));
        }
    CHECK(found_cut1);

    CHECK_THROWS_AS(crossover(CrossoverKind::OneDiffBit, BitString::from_string("10"), BitString::from_string("10"),
                              rng),
                    IdenticalParents);
}

TEST_CASE("sampled crossover matches enumerated outcome distribution") {
    const int n = 4;
    Rng seed_rng(23);
    for (CrossoverKind kind : {CrossoverKind::OnePoint, CrossoverKind::Uniform, CrossoverKind::OneBitX,
                               CrossoverKind::OneDiffBit}) {
        const BitString s1 = BitString::from_string("1010");
        const BitString s2 = BitString::from_string("0110");
        std::map<std::pair<std::uint64_t, std::uint64_t>, double> expected;
        for (const auto& o : enumerate_crossover(kind, s1.code(), s2.code(), n)) expected[{o.o1, o.o2}] += o.prob;
        std::map<std::pair<std::uint64_t, std::uint64_t>, int> seen;
        const int samples = 40000;
        Rng rng(seed_rng.next_u64());
        for (int i = 0; i < samples; ++i) {
            const auto [o1, o2] = crossover(kind, s1, s2, rng);
            ++seen[{o1.code(), o2.code()}];
        }
        for (const auto& [key, count] : seen) CHECK(expected.count(key) == 1);
        for (const auto& [key, p] : expected) {
            const double se = std::sqrt(samples * p * (1.0 - p));
            CHECK(std::abs(seen[key] - samples * p) <= 4 * se + 1);
        }
    }
}

TEST_CASE("uniform crossover swap rate is 1/n per position") {
    const int n = 6;
    const int samples = 100000;
    Rng rng(29);
    const BitString s1(static_cast<std::size_t>(n));
    const BitString s2 = BitString::all_ones(static_cast<std::size_t>(n));
    std::vector<int> swapped(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < samples; ++i) {
        const auto [o1, o2] = crossover(CrossoverKind::Uniform, s1, s2, rng);
        for (int p = 1; p <= n; ++p)
            if (o1.bit(static_cast<std::size_t>(p)) == 1) ++swapped[static_cast<std::size_t>(p - 1)];
    }
    const double rate = 1.0 / n;
    const double se = std::sqrt(samples * rate * (1.0 - rate));
    for (int p = 0; p < n; ++p) CHECK(std::abs(swapped[static_cast<std::size_t>(p)] - samples * rate) <= 4 * se);
}

TEST_CASE("one-point cut position is uniform") {
    const int n = 5;
    const int samples = 100000;
    Rng rng(31);
    const BitString s1(static_cast<std::size_t>(n));
    const BitString s2 = BitString::all_ones(static_cast<std::size_t>(n));
    std::vector<int> cuts(static_cast<std::size_t>(n - 1), 0);
    for (int i = 0; i < samples; ++i) {
        const auto [o1, o2] = crossover(CrossoverKind::OnePoint, s1, s2, rng);
        int cut = 0;  // o1 = 0^cut 1^(n-cut)
        while (cut < n && o1.bit(static_cast<std::size_t>(cut + 1)) == 0) ++cut;
        CHECK(cut >= 1);
        CHECK(cut <= n - 1);
        ++cuts[static_cast<std::size_t>(cut - 1)];
    }
    const double p = 1.0 / (n - 1);
    const double se = std::sqrt(samples * p * (1.0 - p));
    for (int c = 0; c < n - 1; ++c) CHECK(std::abs(cuts[static_cast<std::size_t>(c)] - samples * p) <= 4 * se);
}

TEST_CASE("strategy decisions follow the stated conditions") {
    Rng rng(1);
    {
        Population pop{BitString::from_string("10111"), BitString::from_string("11100")};
        CHECK(mr_decide(Strategy::MR1a, pop, rng) == ActionKind::FirstDiffBitCrossover);
    }
    {
        Population pop{BitString::from_string("11101"), BitString::from_string("10110")};
        CHECK(mr_decide(Strategy::MR1b, pop, rng) == ActionKind::FirstDiffBitCrossover);
        CHECK(mr_decide(Strategy::MR1, pop, rng) == ActionKind::FirstDiffBitCrossover);
        CHECK(mr_decide(Strategy::MR2, pop, rng) == ActionKind::FirstDiffPointCrossover);
        CHECK(mr_decide(Strategy::MR1a, pop, rng) == ActionKind::OneBitMutation);
    }
    {
        // n=10, i=1, delta=0: 1*(1+10/9) <= 10, so a successful coin picks
        // the one-diff-bit exchange
        Population pop{BitString::from_string("0111111111"), BitString::from_string("1011111111")};
        std::uint64_t seed = 0;
        while (!Rng(seed).next_bool()) ++seed;
        Rng coin(seed);
        CHECK(mr_decide(Strategy::MR3, pop, coin) == ActionKind::OneDiffBitCrossover);
        std::uint64_t fail_seed = 0;
        while (Rng(fail_seed).next_bool()) ++fail_seed;
        Rng coin2(fail_seed);
        CHECK(mr_decide(Strategy::MR3, pop, coin2) == ActionKind::OneBitMutation);
    }
    {
        Population pop{BitString::from_string("11"), BitString::from_string("11")};
        CHECK(mr_decide(Strategy::MR3, pop, rng) == ActionKind::OneBitMutation);
    }
}

TEST_CASE("mr3 trigger handles degenerate and large inputs") {
    CHECK(mr3_condition(10, 1, 0));
    CHECK_FALSE(mr3_condition(10, 6, 4));  // n - i - delta == 0
    CHECK_FALSE(mr3_condition(10, 5, 0));  // 5 * (1 + 50/5)^5 >> 10
    CHECK(mr3_condition(64, 1, 0));
    CHECK_FALSE(mr3_condition(64, 60, 0));  // would overflow without log form
}

TEST_CASE("strategy decisions are slot-symmetric") {
    Rng rng(41);
    for (Strategy s : {Strategy::MR1a, Strategy::MR1b, Strategy::MR1, Strategy::MR2, Strategy::MR3}) {
        for (int trial = 0; trial < 400; ++trial) {
            const int n = 2 + static_cast<int>(rng.next_below(6));
            Population pop{BitString::random(static_cast<std::size_t>(n), rng),
                           BitString::random(static_cast<std::size_t>(n), rng)};
            Population swapped{pop.s2, pop.s1};
            const std::uint64_t coin_seed = rng.next_u64();
            Rng r1(coin_seed), r2(coin_seed);
            CHECK(mr_decide(s, pop, r1) == mr_decide(s, swapped, r2));
        }
    }
}

TEST_CASE("selection rules") {
    CHECK(accept_offspring(Algorithm::OnePlusOne, TiePolicy::KeepParent, 1, 1));
    CHECK_FALSE(accept_offspring(Algorithm::OnePlusOneStrict, TiePolicy::KeepParent, 1, 1));
    CHECK_FALSE(accept_offspring(Algorithm::TwoColonTwo, TiePolicy::KeepParent, 2, 2));
    CHECK(accept_offspring(Algorithm::TwoColonTwo, TiePolicy::PreferOffspring, 2, 2));
    CHECK(best_two_stable({3, 3, 3, 3}) == std::array<int, 2>{0, 1});
    CHECK(best_two_stable({1, 3, 2, 0}) == std::array<int, 2>{1, 2});
    CHECK(best_two_stable({1, 1, 2, 2}) == std::array<int, 2>{2, 3});
}

TEST_CASE("best population fitness never decreases across steps") {
    Rng rng(43);
    std::vector<EaConfig> configs;
    for (Problem p : {Problem::LeadingOnes, Problem::OneMax}) {
        configs.push_back(EaConfig::mutation_only(Algorithm::OnePlusOne, p, MutationKind::Bitwise));
        configs.push_back(EaConfig::with_crossover(Algorithm::TwoColonTwo, p, MutationKind::OneBit,
                                                   CrossoverKind::OneBitX, 0.5));
        configs.push_back(EaConfig::with_crossover(Algorithm::TwoColonTwo, p, MutationKind::Bitwise,
                                                   CrossoverKind::Uniform, 0.4, TiePolicy::PreferOffspring));
        configs.push_back(EaConfig::with_crossover(Algorithm::TwoPlusTwo, p, MutationKind::OneBit,
                                                   CrossoverKind::OnePoint, 0.7));
        configs.push_back(EaConfig::with_strategy(p, Strategy::MR2));
        configs.push_back(EaConfig::with_strategy(p, Strategy::MR3));
    }
    for (const auto& config : configs) {
        const int n = 6;
        Population pop{BitString::random(n, rng), BitString::random(n, rng)};
        int best = std::max(evaluate(config.problem, pop.s1),
                            config.two_individual() ? evaluate(config.problem, pop.s2) : 0);
        for (int t = 0; t < 200; ++t) {
            pop = ea_step(config, pop, rng);
            const int now = std::max(evaluate(config.problem, pop.s1),
                                     config.two_individual() ? evaluate(config.problem, pop.s2) : 0);
            CHECK(now >= best);
            best = now;
        }
    }
}

TEST_CASE("config validation") {
    EaConfig bad = EaConfig::mutation_only(Algorithm::OnePlusOne, Problem::OneMax, MutationKind::OneBit);
    bad.crossover = CrossoverKind::OneBitX;
    CHECK_THROWS_AS(bad.validate(), InvalidConfig);

    EaConfig bad_pc = EaConfig::mutation_only(Algorithm::TwoColonTwo, Problem::OneMax, MutationKind::OneBit);
    bad_pc.pc = 1.5;
    CHECK_THROWS_AS(bad_pc.validate(), InvalidConfig);

    EaConfig strat = EaConfig::with_strategy(Problem::OneMax, Strategy::MR3);
    strat.algorithm = Algorithm::TwoPlusTwo;
    CHECK_THROWS_AS(strat.validate(), InvalidConfig);
}

TEST_CASE("run_trial contracts") {
    const EaConfig config = EaConfig::mutation_only(Algorithm::OnePlusOne, Problem::OneMax, MutationKind::OneBit);

    // n=1 from the zero string: the single bit must flip in one step
    std::uint64_t seed = 0;
    while (true) {
        Rng rng(seed);
        if (BitString::random(1, rng) == BitString::from_string("0")) break;
        ++seed;
    }
    CHECK(run_trial(config, 1, seed, 100).steps == 1);

    // an optimal initial population reports zero steps
    const EaConfig config2 = EaConfig::with_crossover(Algorithm::TwoColonTwo, Problem::LeadingOnes,
                                                      MutationKind::OneBit, CrossoverKind::OneBitX, 0.5);
    std::uint64_t seed2 = 0;
    while (true) {
        Rng rng(seed2);
        const BitString s1 = BitString::random(2, rng);
        if (s1 == BitString::all_ones(2)) break;
        ++seed2;
    }
    const TrialResult r2 = run_trial(config2, 2, seed2, 100);
    CHECK(r2.steps == 0);
    CHECK_FALSE(r2.censored);

    // censoring: a short cutoff on a configuration that cannot finish fast
    const EaConfig slow = EaConfig::mutation_only(Algorithm::OnePlusOneStrict, Problem::LeadingOnes,
                                                  MutationKind::OneBit);
    std::uint64_t seed3 = 0;
    while (true) {
        Rng rng(seed3);
        if (evaluate(Problem::LeadingOnes, BitString::random(20, rng)) == 0) break;
        ++seed3;
    }
    const TrialResult r3 = run_trial(slow, 20, seed3, 5);
    CHECK(r3.censored);
    CHECK(r3.steps == 5);
}

TEST_CASE("run_trial is reproducible and matches the reference stepper") {
    std::vector<EaConfig> configs;
    for (Problem p : {Problem::LeadingOnes, Problem::OneMax}) {
        configs.push_back(EaConfig::mutation_only(Algorithm::OnePlusOne, p, MutationKind::OneBit));
        configs.push_back(EaConfig::mutation_only(Algorithm::OnePlusOneStrict, p, MutationKind::Bitwise));
        configs.push_back(EaConfig::mutation_only(Algorithm::TwoColonTwo, p, MutationKind::OneBit));
        for (CrossoverKind kind : {CrossoverKind::OnePoint, CrossoverKind::Uniform, CrossoverKind::OneBitX}) {
            configs.push_back(EaConfig::with_crossover(Algorithm::TwoColonTwo, p, MutationKind::OneBit, kind, 0.5));
            configs.push_back(EaConfig::with_crossover(Algorithm::TwoColonTwo, p, MutationKind::Bitwise, kind, 0.3,
                                                       TiePolicy::PreferOffspring));
        }
        for (Strategy s : {Strategy::MR1a, Strategy::MR1b, Strategy::MR1, Strategy::MR2, Strategy::MR3})
            configs.push_back(EaConfig::with_strategy(p, s));
    }
    for (const auto& config : configs) {
        for (int n : {1, 2, 5, 8}) {
            if (config.crossover && *config.crossover == CrossoverKind::OnePoint && n < 2) continue;
            for (std::uint64_t seed = 0; seed < 25; ++seed) {
                const TrialResult fast = run_trial(config, n, seed, 4000);
                const TrialResult ref = run_trial_reference(config, n, seed, 4000);
                CHECK(fast.steps == ref.steps);
                CHECK(fast.censored == ref.censored);
                const TrialResult again = run_trial(config, n, seed, 4000);
                CHECK(fast.steps == again.steps);
            }
        }
    }
}
