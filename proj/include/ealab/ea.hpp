#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "ealab/bitstring.hpp"
#include "ealab/errors.hpp"
#include "ealab/operators.hpp"
#include "ealab/rng.hpp"

namespace ealab {

enum class Algorithm { OnePlusOne, OnePlusOneStrict, TwoColonTwo, TwoPlusTwo };

enum class TiePolicy { KeepParent, PreferOffspring };

// Conditional reproduction rules that pick a crossover only when the
// current population's (LO, ||.||) statistics make it provably useful.
enum class Strategy { MR1a, MR1b, MR1, MR2, MR3 };

enum class ActionKind { FirstDiffBitCrossover, FirstDiffPointCrossover, OneDiffBitCrossover, OneBitMutation };

struct EaConfig {
    Algorithm algorithm = Algorithm::OnePlusOne;
    Problem problem = Problem::OneMax;
    MutationKind mutation = MutationKind::OneBit;
    std::optional<CrossoverKind> crossover;  // reproduction branch: crossover w.p. pc, else mutation
    double pc = 0.0;
    std::optional<Strategy> strategy;  // mutually exclusive with crossover/pc
    TiePolicy tie = TiePolicy::KeepParent;

    bool two_individual() const {
        return algorithm == Algorithm::TwoColonTwo || algorithm == Algorithm::TwoPlusTwo;
    }
    int arity() const { return two_individual() ? 2 : 1; }

    void validate() const;  // throws InvalidConfig
    std::string fingerprint() const;

    static EaConfig mutation_only(Algorithm a, Problem p, MutationKind m, TiePolicy tie = TiePolicy::KeepParent);
    static EaConfig with_crossover(Algorithm a, Problem p, MutationKind m, CrossoverKind x, double pc,
                                   TiePolicy tie = TiePolicy::KeepParent);
    static EaConfig with_strategy(Problem p, Strategy s, TiePolicy tie = TiePolicy::KeepParent);
};

// Pair statistics after relabeling so that member A has the larger
// one-count (ties broken by larger LO, then slot order). The strategy
// conditions are stated in terms of these canonical labels.
struct CanonicalPair {
    int lo_a = 0;
    int lo_b = 0;
    int zeros_a = 0;  // i
    int delta = 0;    // ||A|| - ||B||
};

CanonicalPair canonicalize(int lo1, int ones1, int lo2, int ones2, int n);

// Numeric trigger for the MR3 rule, evaluated in log space so large
// exponents cannot overflow. Defined false when i + delta == n.
bool mr3_condition(int n, int i, int delta);

ActionKind mr_decide(Strategy strategy, const Population& pop, Rng& rng);

// Selection rules, shared with the exact chain construction.
bool accept_offspring(Algorithm alg, TiePolicy tie, int parent_fit, int offspring_fit);

// Indices (into s1,s2,o1,o2 order) of the two kept members, stable on ties.
std::array<int, 2> best_two_stable(const std::array<int, 4>& fitness);

// One reproduction+selection iteration. The maximum fitness in the
// population never decreases across a step.
Population ea_step(const EaConfig& config, const Population& pop, Rng& rng);

struct TrialResult {
    std::uint64_t steps = 0;
    bool censored = false;
};

// Runs from a uniform random initial population until an optimum appears
// in the population, or `cutoff` steps have elapsed (censored). Identical
// (config, n, seed) always gives identical results.
TrialResult run_trial(const EaConfig& config, int n, std::uint64_t seed, std::uint64_t cutoff);

// Plain loop over ea_step; consumes draws identically to run_trial.
// Kept as the reference path for equivalence tests.
TrialResult run_trial_reference(const EaConfig& config, int n, std::uint64_t seed, std::uint64_t cutoff);

}  // namespace ealab
