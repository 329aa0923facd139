#include "ealab/ea.hpp"

#include <cmath>
#include <cstring>
#include <sstream>
#include <tuple>
#include <vector>

#include "ealab/names.hpp"

namespace ealab {

void EaConfig::validate() const {
    if (pc < 0.0 || pc > 1.0) throw InvalidConfig("pc must lie in [0,1]");
    if (strategy && crossover) throw InvalidConfig("strategy and crossover reproduction are mutually exclusive");
    if (strategy) {
        if (algorithm != Algorithm::TwoColonTwo) throw InvalidConfig("strategies require the (2:2) algorithm");
        if (mutation != MutationKind::OneBit) throw InvalidConfig("strategies are defined with one-bit mutation");
        if (pc != 0.0) throw InvalidConfig("strategies do not take a crossover probability");
    }
    if (crossover && !two_individual()) throw InvalidConfig("crossover requires a 2-individual algorithm");
}

EaConfig EaConfig::mutation_only(Algorithm a, Problem p, MutationKind m, TiePolicy tie) {
    EaConfig c;
    c.algorithm = a;
    c.problem = p;
    c.mutation = m;
    c.tie = tie;
    c.validate();
    return c;
}

EaConfig EaConfig::with_crossover(Algorithm a, Problem p, MutationKind m, CrossoverKind x, double pc, TiePolicy tie) {
    EaConfig c;
    c.algorithm = a;
    c.problem = p;
    c.mutation = m;
    c.crossover = x;
    c.pc = pc;
    c.tie = tie;
    c.validate();
    return c;
}

EaConfig EaConfig::with_strategy(Problem p, Strategy s, TiePolicy tie) {
    EaConfig c;
    c.algorithm = Algorithm::TwoColonTwo;
    c.problem = p;
    c.mutation = MutationKind::OneBit;
    c.strategy = s;
    c.tie = tie;
    c.validate();
    return c;
}

std::string EaConfig::fingerprint() const {
    std::ostringstream os;
    os << to_string(algorithm) << ':' << to_string(problem) << ":mut=" << to_string(mutation);
    if (strategy) {
        os << ":strategy=" << to_string(*strategy);
    } else if (crossover) {
        os << ":x=" << to_string(*crossover) << ":pc=" << pc;
    } else {
        os << ":x=none";
    }
    if (two_individual() && algorithm == Algorithm::TwoColonTwo)
        os << ":tie=" << (tie == TiePolicy::KeepParent ? "keep" : "offspring");
    return os.str();
}

CanonicalPair canonicalize(int lo1, int ones1, int lo2, int ones2, int n) {
    const bool slot1_is_a = (ones1 > ones2) || (ones1 == ones2 && lo1 >= lo2);
    CanonicalPair c;
    if (slot1_is_a) {
        c.lo_a = lo1;
        c.lo_b = lo2;
        c.zeros_a = n - ones1;
        c.delta = ones1 - ones2;
    } else {
        c.lo_a = lo2;
        c.lo_b = lo1;
        c.zeros_a = n - ones2;
        c.delta = ones2 - ones1;
    }
    return c;
}

bool mr3_condition(int n, int i, int delta) {
    const int d = i + delta;
    if (n - d == 0) return false;
    if (d == 0) return true;
    const double lhs = std::log(static_cast<double>(d)) +
                       i * std::log1p(static_cast<double>(n) * d / (n - d));
    return lhs <= std::log(static_cast<double>(n));
}

namespace {

bool mr1a_condition(const CanonicalPair& c) {
    return c.lo_a < c.lo_b || (c.delta == 0 && c.lo_a != c.lo_b);
}

bool mr1b_condition(const CanonicalPair& c) { return c.lo_a > c.lo_b && c.delta >= 1 && c.delta <= 2; }

ActionKind mr_decide_impl(Strategy strategy, const CanonicalPair& c, bool identical, int n, Rng& rng) {
    switch (strategy) {
        case Strategy::MR1a:
            return mr1a_condition(c) ? ActionKind::FirstDiffBitCrossover : ActionKind::OneBitMutation;
        case Strategy::MR1b:
            return mr1b_condition(c) ? ActionKind::FirstDiffBitCrossover : ActionKind::OneBitMutation;
        case Strategy::MR1:
            return (mr1a_condition(c) || mr1b_condition(c)) ? ActionKind::FirstDiffBitCrossover
                                                            : ActionKind::OneBitMutation;
        case Strategy::MR2:
            if (mr1a_condition(c)) return ActionKind::FirstDiffBitCrossover;
            if (c.lo_a > c.lo_b && c.delta != 0) return ActionKind::FirstDiffPointCrossover;
            return ActionKind::OneBitMutation;
        case Strategy::MR3: {
            if (identical) return ActionKind::OneBitMutation;
            const bool coin = rng.next_bool();
            if (coin && mr3_condition(n, c.zeros_a, c.delta)) return ActionKind::OneDiffBitCrossover;
            return ActionKind::OneBitMutation;
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace

ActionKind mr_decide(Strategy strategy, const Population& pop, Rng& rng) {
    const int n = static_cast<int>(pop.s1.size());
    const CanonicalPair c = canonicalize(leading_ones(pop.s1), one_count(pop.s1), leading_ones(pop.s2),
                                         one_count(pop.s2), n);
    return mr_decide_impl(strategy, c, pop.s1 == pop.s2, n, rng);
}

bool accept_offspring(Algorithm alg, TiePolicy tie, int parent_fit, int offspring_fit) {
    switch (alg) {
        case Algorithm::OnePlusOne:
            return offspring_fit >= parent_fit;
        case Algorithm::OnePlusOneStrict:
            return offspring_fit > parent_fit;
        case Algorithm::TwoColonTwo:
            return tie == TiePolicy::PreferOffspring ? offspring_fit >= parent_fit : offspring_fit > parent_fit;
        case Algorithm::TwoPlusTwo:
            break;
    }
    throw std::logic_error("per-slot acceptance is undefined for (2+2)");
}

std::array<int, 2> best_two_stable(const std::array<int, 4>& fitness) {
    int first = 0;
    for (int k = 1; k < 4; ++k)
        if (fitness[k] > fitness[first]) first = k;
    int second = -1;
    for (int k = 0; k < 4; ++k) {
        if (k == first) continue;
        if (second < 0 || fitness[k] > fitness[second]) second = k;
    }
    return {first, second};
}

Population ea_step(const EaConfig& config, const Population& pop, Rng& rng) {
    config.validate();
    if (!config.two_individual()) {
        const int fs = evaluate(config.problem, pop.s1);
        BitString o = mutate(config.mutation, pop.s1, rng);
        const int fo = evaluate(config.problem, o);
        Population next = pop;
        if (accept_offspring(config.algorithm, config.tie, fs, fo)) next.s1 = std::move(o);
        return next;
    }

    BitString o1, o2;
    if (config.strategy) {
        switch (mr_decide(*config.strategy, pop, rng)) {
            case ActionKind::FirstDiffBitCrossover:
                std::tie(o1, o2) = crossover(CrossoverKind::FirstDiffBit, pop.s1, pop.s2, rng);
                break;
            case ActionKind::FirstDiffPointCrossover:
                std::tie(o1, o2) = crossover(CrossoverKind::FirstDiffPoint, pop.s1, pop.s2, rng);
                break;
            case ActionKind::OneDiffBitCrossover:
                std::tie(o1, o2) = crossover(CrossoverKind::OneDiffBit, pop.s1, pop.s2, rng);
                break;
            case ActionKind::OneBitMutation:
                o1 = mutate(MutationKind::OneBit, pop.s1, rng);
                o2 = mutate(MutationKind::OneBit, pop.s2, rng);
                break;
        }
    } else if (config.crossover) {
        const double r = rng.next_unit();
        if (r < config.pc) {
            std::tie(o1, o2) = crossover(*config.crossover, pop.s1, pop.s2, rng);
        } else {
            o1 = mutate(config.mutation, pop.s1, rng);
            o2 = mutate(config.mutation, pop.s2, rng);
        }
    } else {
        o1 = mutate(config.mutation, pop.s1, rng);
        o2 = mutate(config.mutation, pop.s2, rng);
    }

    const int f1 = evaluate(config.problem, pop.s1);
    const int f2 = evaluate(config.problem, pop.s2);
    const int g1 = evaluate(config.problem, o1);
    const int g2 = evaluate(config.problem, o2);

    if (config.algorithm == Algorithm::TwoColonTwo) {
        Population next = pop;
        if (accept_offspring(config.algorithm, config.tie, f1, g1)) next.s1 = std::move(o1);
        if (accept_offspring(config.algorithm, config.tie, f2, g2)) next.s2 = std::move(o2);
        return next;
    }

    const std::array<const BitString*, 4> cand{&pop.s1, &pop.s2, &o1, &o2};
    const auto kept = best_two_stable({f1, f2, g1, g2});
    return Population{*cand[kept[0]], *cand[kept[1]]};
}

namespace {

bool population_optimal(const EaConfig& config, const Population& pop) {
    if (is_optimal(config.problem, pop.s1)) return true;
    return config.two_individual() && is_optimal(config.problem, pop.s2);
}

// Buffer-reusing stepper for the sampling paths. Mirrors the draw order of
// ea_step exactly; the equivalence is pinned by tests against
// run_trial_reference for every algorithm/operator combination.
class TrialEngine {
public:
    TrialEngine(const EaConfig& config, int n, Rng& rng) : cfg_(config), n_(n), rng_(rng) {
        b1_ = BitString::random(n, rng).raw();
        init_slot_stats(b1_, lo1_, ones1_);
        if (cfg_.two_individual()) {
            b2_ = BitString::random(n, rng).raw();
            init_slot_stats(b2_, lo2_, ones2_);
        }
        scratch_.resize(n);
    }

    bool optimal() const {
        if (fit(1) == n_) return true;
        return cfg_.two_individual() && fit(2) == n_;
    }

    void step() {
        if (!cfg_.two_individual()) {
            mutate_slot(1);
            return;
        }
        if (cfg_.strategy) {
            const CanonicalPair c = canonicalize(lo1_, ones1_, lo2_, ones2_, n_);
            const bool identical = ones1_ == ones2_ && lo1_ == lo2_ && b1_ == b2_;
            switch (mr_decide_impl(*cfg_.strategy, c, identical, n_, rng_)) {
                case ActionKind::FirstDiffBitCrossover:
                    exchange_one(first_diff());
                    return;
                case ActionKind::FirstDiffPointCrossover:
                    exchange_suffix(first_diff());
                    return;
                case ActionKind::OneDiffBitCrossover:
                    exchange_one(pick_diff_position());
                    return;
                case ActionKind::OneBitMutation:
                    mutate_slot(1);
                    mutate_slot(2);
                    return;
            }
        }
        if (cfg_.crossover) {
            const double r = rng_.next_unit();
            if (r < cfg_.pc) {
                apply_crossover(*cfg_.crossover);
                return;
            }
        }
        mutate_slot(1);
        mutate_slot(2);
    }

private:
    using Bytes = std::vector<std::uint8_t>;

    void init_slot_stats(const Bytes& b, int& lo, int& ones) {
        lo = 0;
        ones = 0;
        for (int i = 0; i < n_; ++i) ones += b[static_cast<std::size_t>(i)];
        while (lo < n_ && b[static_cast<std::size_t>(lo)] == 1) ++lo;
    }

    int fit(int slot) const {
        if (cfg_.problem == Problem::OneMax) return slot == 1 ? ones1_ : ones2_;
        return slot == 1 ? lo1_ : lo2_;
    }

    // LO of the slot after flipping `pos`, without materializing the child.
    int lo_after_flip(const Bytes& b, int lo, int pos) const {
        if (b[static_cast<std::size_t>(pos - 1)] == 1) return pos <= lo ? pos - 1 : lo;
        if (pos != lo + 1) return lo;
        int new_lo = pos;
        while (new_lo < n_ && b[static_cast<std::size_t>(new_lo)] == 1) ++new_lo;
        return new_lo;
    }

    void apply_flip(int slot, int pos) {
        Bytes& b = slot == 1 ? b1_ : b2_;
        int& lo = slot == 1 ? lo1_ : lo2_;
        int& ones = slot == 1 ? ones1_ : ones2_;
        const int new_lo = lo_after_flip(b, lo, pos);
        ones += b[static_cast<std::size_t>(pos - 1)] ? -1 : 1;
        b[static_cast<std::size_t>(pos - 1)] ^= 1;
        lo = new_lo;
    }

    bool accept(int parent_fit, int offspring_fit) const {
        return accept_offspring(cfg_.algorithm, cfg_.tie, parent_fit, offspring_fit);
    }

    void flip_if_accepted(int slot, int pos) {
        const Bytes& b = slot == 1 ? b1_ : b2_;
        const int lo = slot == 1 ? lo1_ : lo2_;
        const int ones = slot == 1 ? ones1_ : ones2_;
        int off_fit;
        if (cfg_.problem == Problem::OneMax)
            off_fit = ones + (b[static_cast<std::size_t>(pos - 1)] ? -1 : 1);
        else
            off_fit = lo_after_flip(b, lo, pos);
        if (accept(fit(slot), off_fit)) apply_flip(slot, pos);
    }

    void mutate_slot(int slot) {
        if (cfg_.mutation == MutationKind::OneBit) {
            const int pos = 1 + static_cast<int>(rng_.next_below(static_cast<std::uint32_t>(n_)));
            flip_if_accepted(slot, pos);
            return;
        }
        // bitwise: materialize the child in the scratch buffer
        const Bytes& b = slot == 1 ? b1_ : b2_;
        const double rate = 1.0 / n_;
        for (int i = 0; i < n_; ++i)
            scratch_[static_cast<std::size_t>(i)] =
                static_cast<std::uint8_t>(b[static_cast<std::size_t>(i)] ^ (rng_.next_unit() < rate ? 1 : 0));
        adopt_if_accepted(slot, scratch_);
    }

    void adopt_if_accepted(int slot, const Bytes& child) {
        int lo = 0, ones = 0;
        for (int i = 0; i < n_; ++i) ones += child[static_cast<std::size_t>(i)];
        while (lo < n_ && child[static_cast<std::size_t>(lo)] == 1) ++lo;
        const int off_fit = cfg_.problem == Problem::OneMax ? ones : lo;
        if (!accept(fit(slot), off_fit)) return;
        if (slot == 1) {
            b1_ = child;
            lo1_ = lo;
            ones1_ = ones;
        } else {
            b2_ = child;
            lo2_ = lo;
            ones2_ = ones;
        }
    }

    int first_diff() const {
        int pos = std::min(lo1_, lo2_) + 1;
        while (b1_[static_cast<std::size_t>(pos - 1)] == b2_[static_cast<std::size_t>(pos - 1)]) ++pos;
        return pos;
    }

    int pick_diff_position() {
        int count = 0;
        for (int i = 0; i < n_; ++i) count += b1_[static_cast<std::size_t>(i)] != b2_[static_cast<std::size_t>(i)];
        int k = static_cast<int>(rng_.next_below(static_cast<std::uint32_t>(count)));
        for (int i = 0; i < n_; ++i) {
            if (b1_[static_cast<std::size_t>(i)] != b2_[static_cast<std::size_t>(i)] && k-- == 0) return i + 1;
        }
        throw std::logic_error("unreachable");
    }

    // One-position exchange: each slot's child is its own one-bit flip at
    // `pos`; acceptance is evaluated per slot against the parents.
    void exchange_one(int pos) {
        if (b1_[static_cast<std::size_t>(pos - 1)] == b2_[static_cast<std::size_t>(pos - 1)]) return;
        const bool a1 = would_accept_flip(1, pos);
        const bool a2 = would_accept_flip(2, pos);
        if (a1) apply_flip(1, pos);
        if (a2) apply_flip(2, pos);
    }

    bool would_accept_flip(int slot, int pos) const {
        const Bytes& b = slot == 1 ? b1_ : b2_;
        const int lo = slot == 1 ? lo1_ : lo2_;
        const int ones = slot == 1 ? ones1_ : ones2_;
        const int off_fit = cfg_.problem == Problem::OneMax
                                ? ones + (b[static_cast<std::size_t>(pos - 1)] ? -1 : 1)
                                : lo_after_flip(b, lo, pos);
        return accept(fit(slot), off_fit);
    }

    void exchange_suffix(int from) {
        Bytes child1 = b1_, child2 = b2_;
        for (int i = from - 1; i < n_; ++i) {
            child1[static_cast<std::size_t>(i)] = b2_[static_cast<std::size_t>(i)];
            child2[static_cast<std::size_t>(i)] = b1_[static_cast<std::size_t>(i)];
        }
        // evaluate both children against both parents before adopting
        const int f1 = fit(1), f2 = fit(2);
        int lo_c1 = 0, ones_c1 = 0, lo_c2 = 0, ones_c2 = 0;
        for (int i = 0; i < n_; ++i) {
            ones_c1 += child1[static_cast<std::size_t>(i)];
            ones_c2 += child2[static_cast<std::size_t>(i)];
        }
        while (lo_c1 < n_ && child1[static_cast<std::size_t>(lo_c1)] == 1) ++lo_c1;
        while (lo_c2 < n_ && child2[static_cast<std::size_t>(lo_c2)] == 1) ++lo_c2;
        const int g1 = cfg_.problem == Problem::OneMax ? ones_c1 : lo_c1;
        const int g2 = cfg_.problem == Problem::OneMax ? ones_c2 : lo_c2;
        if (accept(f1, g1)) {
            b1_ = std::move(child1);
            lo1_ = lo_c1;
            ones1_ = ones_c1;
        }
        if (accept(f2, g2)) {
            b2_ = std::move(child2);
            lo2_ = lo_c2;
            ones2_ = ones_c2;
        }
    }

    void apply_crossover(CrossoverKind kind) {
        switch (kind) {
            case CrossoverKind::OneBitX: {
                const int pos = 1 + static_cast<int>(rng_.next_below(static_cast<std::uint32_t>(n_)));
                exchange_one(pos);
                return;
            }
            case CrossoverKind::OnePoint: {
                if (n_ < 2) throw std::invalid_argument("one-point crossover requires n >= 2");
                const int cut = 1 + static_cast<int>(rng_.next_below(static_cast<std::uint32_t>(n_ - 1)));
                exchange_suffix(cut + 1);
                return;
            }
            case CrossoverKind::Uniform: {
                // draw the full mask first to keep the draw order position-wise
                mask_.assign(static_cast<std::size_t>(n_), 0);
                const double rate = 1.0 / n_;
                for (int i = 0; i < n_; ++i) mask_[static_cast<std::size_t>(i)] = rng_.next_unit() < rate;
                exchange_masked();
                return;
            }
            case CrossoverKind::OneDiffBit: {
                exchange_one(pick_diff_position_or_throw());
                return;
            }
            case CrossoverKind::FirstDiffBit: {
                if (b1_ == b2_) throw IdenticalParents();
                exchange_one(first_diff());
                return;
            }
            case CrossoverKind::FirstDiffPoint: {
                if (b1_ == b2_) throw IdenticalParents();
                exchange_suffix(first_diff());
                return;
            }
        }
    }

    int pick_diff_position_or_throw() {
        if (b1_ == b2_) throw IdenticalParents();
        return pick_diff_position();
    }

    void exchange_masked() {
        Bytes child1 = b1_, child2 = b2_;
        for (int i = 0; i < n_; ++i) {
            if (mask_[static_cast<std::size_t>(i)]) {
                child1[static_cast<std::size_t>(i)] = b2_[static_cast<std::size_t>(i)];
                child2[static_cast<std::size_t>(i)] = b1_[static_cast<std::size_t>(i)];
            }
        }
        const int f1 = fit(1), f2 = fit(2);
        int lo_c1 = 0, ones_c1 = 0, lo_c2 = 0, ones_c2 = 0;
        for (int i = 0; i < n_; ++i) {
            ones_c1 += child1[static_cast<std::size_t>(i)];
            ones_c2 += child2[static_cast<std::size_t>(i)];
        }
        while (lo_c1 < n_ && child1[static_cast<std::size_t>(lo_c1)] == 1) ++lo_c1;
        while (lo_c2 < n_ && child2[static_cast<std::size_t>(lo_c2)] == 1) ++lo_c2;
        const int g1 = cfg_.problem == Problem::OneMax ? ones_c1 : lo_c1;
        const int g2 = cfg_.problem == Problem::OneMax ? ones_c2 : lo_c2;
        if (accept(f1, g1)) {
            b1_ = std::move(child1);
            lo1_ = lo_c1;
            ones1_ = ones_c1;
        }
        if (accept(f2, g2)) {
            b2_ = std::move(child2);
            lo2_ = lo_c2;
            ones2_ = ones_c2;
        }
    }

    const EaConfig& cfg_;
    int n_;
    Rng& rng_;
    Bytes b1_, b2_, scratch_;
    std::vector<bool> mask_;
    int lo1_ = 0, ones1_ = 0, lo2_ = 0, ones2_ = 0;
};

}  // namespace

TrialResult run_trial(const EaConfig& config, int n, std::uint64_t seed, std::uint64_t cutoff) {
    config.validate();
    if (n < 1) throw InvalidConfig("n must be >= 1");
    if (cutoff < 1) throw InvalidConfig("cutoff must be >= 1");
    if (config.algorithm == Algorithm::TwoPlusTwo) return run_trial_reference(config, n, seed, cutoff);

    Rng rng(seed);
    TrialEngine engine(config, n, rng);
    if (engine.optimal()) return {0, false};
    for (std::uint64_t t = 1; t <= cutoff; ++t) {
        engine.step();
        if (engine.optimal()) return {t, false};
    }
    return {cutoff, true};
}

TrialResult run_trial_reference(const EaConfig& config, int n, std::uint64_t seed, std::uint64_t cutoff) {
    config.validate();
    if (n < 1) throw InvalidConfig("n must be >= 1");
    if (cutoff < 1) throw InvalidConfig("cutoff must be >= 1");
    Rng rng(seed);
    Population pop;
    pop.s1 = BitString::random(static_cast<std::size_t>(n), rng);
    pop.s2 = config.two_individual() ? BitString::random(static_cast<std::size_t>(n), rng) : pop.s1;
    if (population_optimal(config, pop)) return {0, false};
    for (std::uint64_t t = 1; t <= cutoff; ++t) {
        pop = ea_step(config, pop, rng);
        if (population_optimal(config, pop)) return {t, false};
    }
    return {cutoff, true};
}

}  // namespace ealab
