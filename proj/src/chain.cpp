#include "ealab/chain.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <ostream>
#include <thread>

namespace ealab {

StateSpace enumerate_population_space(int n, int arity, std::size_t cap) {
    if (n < 1) throw InvalidConfig("n must be >= 1");
    if (arity != 1 && arity != 2) throw InvalidConfig("arity must be 1 or 2");
    if (arity == 1 && n > 16) throw SizeLimit("single-solution space limited to n <= 16");
    if (arity == 2 && n > 10) throw SizeLimit("pair space limited to n <= 10");
    const std::size_t count = std::size_t{1} << (n * arity);
    if (count > cap) throw SizeLimit("state count " + std::to_string(count) + " exceeds cap " + std::to_string(cap));

    StateSpace space;
    space.n = n;
    space.arity = arity;
    space.optimal.assign(count, 0);
    const std::uint64_t opt = optimum_code(n);
    for (std::size_t idx = 0; idx < count; ++idx) {
        const bool is_opt = arity == 1 ? (idx == opt) : (space.code1(idx) == opt || space.code2(idx) == opt);
        if (is_opt) {
            space.optimal[idx] = 1;
            ++space.optimal_count;
        }
    }
    return space;
}

namespace {

constexpr double kRowSumTol = 1e-12;

struct RowEntry {
    std::uint32_t col;
    double p;
};

// Reproduction branch: weighted list of offspring-pair distributions.
struct Branch {
    double weight;
    std::vector<PairOutcome> outcomes;
};

std::vector<PairOutcome> joint_mutation(MutationKind kind, std::uint64_t c1, std::uint64_t c2, int n) {
    const auto m1 = enumerate_mutation(kind, c1, n);
    const auto m2 = enumerate_mutation(kind, c2, n);
    std::vector<PairOutcome> out;
    out.reserve(m1.size() * m2.size());
    for (const auto& a : m1)
        for (const auto& b : m2) out.push_back({a.code, b.code, a.prob * b.prob});
    return out;
}

std::vector<Branch> reproduction_branches(const EaConfig& config, std::uint64_t c1, std::uint64_t c2, int n) {
    std::vector<Branch> branches;
    if (config.strategy) {
        const CanonicalPair c = canonicalize(lo_of_code(c1, n), ones_of_code(c1), lo_of_code(c2, n),
                                             ones_of_code(c2), n);
        const bool identical = c1 == c2;
        auto xbranch = [&](CrossoverKind kind, double w) {
            branches.push_back({w, enumerate_crossover(kind, c1, c2, n)});
        };
        auto mbranch = [&](double w) { branches.push_back({w, joint_mutation(MutationKind::OneBit, c1, c2, n)}); };
        const bool a1 = c.lo_a < c.lo_b || (c.delta == 0 && c.lo_a != c.lo_b);
        const bool b1 = c.lo_a > c.lo_b && c.delta >= 1 && c.delta <= 2;
        switch (*config.strategy) {
            case Strategy::MR1a:
                a1 ? xbranch(CrossoverKind::FirstDiffBit, 1.0) : mbranch(1.0);
                break;
            case Strategy::MR1b:
                b1 ? xbranch(CrossoverKind::FirstDiffBit, 1.0) : mbranch(1.0);
                break;
            case Strategy::MR1:
                (a1 || b1) ? xbranch(CrossoverKind::FirstDiffBit, 1.0) : mbranch(1.0);
                break;
            case Strategy::MR2:
                if (a1)
                    xbranch(CrossoverKind::FirstDiffBit, 1.0);
                else if (c.lo_a > c.lo_b && c.delta != 0)
                    xbranch(CrossoverKind::FirstDiffPoint, 1.0);
                else
                    mbranch(1.0);
                break;
            case Strategy::MR3:
                if (!identical && mr3_condition(n, c.zeros_a, c.delta)) {
                    xbranch(CrossoverKind::OneDiffBit, 0.5);
                    mbranch(0.5);
                } else {
                    mbranch(1.0);
                }
                break;
        }
        return branches;
    }
    if (config.crossover && config.pc > 0.0) {
        branches.push_back({config.pc, enumerate_crossover(*config.crossover, c1, c2, n)});
    }
    const double mut_weight = config.crossover ? 1.0 - config.pc : 1.0;
    if (mut_weight > 0.0) branches.push_back({mut_weight, joint_mutation(config.mutation, c1, c2, n)});
    return branches;
}

class RowBuilder {
public:
    RowBuilder(const EaConfig& config, const StateSpace& space)
        : cfg_(config), space_(space), n_(space.n) {
        fitness_.resize(std::size_t{1} << n_);
        for (std::uint64_t c = 0; c < fitness_.size(); ++c)
            fitness_[c] = evaluate_code(cfg_.problem, c, n_);
    }

    // True one-step law for every state: selection also runs from optimal
    // states (the optimum is never displaced, so the optimal set is still
    // never left); the stop criterion only defines the hitting event.
    std::vector<RowEntry> operator()(std::size_t idx) const {
        std::map<std::uint32_t, double> accum;
        if (space_.arity == 1) {
            const std::uint64_t c = idx;
            const int f = fitness_[c];
            for (const auto& o : enumerate_mutation(cfg_.mutation, c, n_)) {
                const bool take = accept_offspring(cfg_.algorithm, cfg_.tie, f, fitness_[o.code]);
                accum[static_cast<std::uint32_t>(take ? o.code : c)] += o.prob;
            }
        } else {
            const std::uint64_t c1 = space_.code1(idx);
            const std::uint64_t c2 = space_.code2(idx);
            const int f1 = fitness_[c1];
            const int f2 = fitness_[c2];
            for (const auto& branch : reproduction_branches(cfg_, c1, c2, n_)) {
                for (const auto& o : branch.outcomes) {
                    const std::size_t next = select(c1, c2, f1, f2, o.o1, o.o2);
                    accum[static_cast<std::uint32_t>(next)] += branch.weight * o.prob;
                }
            }
        }
        double sum = 0.0;
        std::vector<RowEntry> row;
        row.reserve(accum.size());
        for (const auto& [colk, p] : accum) {
            row.push_back({colk, p});
            sum += p;
        }
        if (std::abs(sum - 1.0) > kRowSumTol)
            throw std::logic_error("transition row sum deviates from 1 by " + std::to_string(sum - 1.0));
        return row;
    }

private:
    std::size_t select(std::uint64_t c1, std::uint64_t c2, int f1, int f2, std::uint64_t o1, std::uint64_t o2) const {
        const int g1 = fitness_[o1];
        const int g2 = fitness_[o2];
        if (cfg_.algorithm == Algorithm::TwoColonTwo) {
            const std::uint64_t n1 = accept_offspring(cfg_.algorithm, cfg_.tie, f1, g1) ? o1 : c1;
            const std::uint64_t n2 = accept_offspring(cfg_.algorithm, cfg_.tie, f2, g2) ? o2 : c2;
            return space_.index(n1, n2);
        }
        const std::array<std::uint64_t, 4> codes{c1, c2, o1, o2};
        const auto kept = best_two_stable({f1, f2, g1, g2});
        return space_.index(codes[static_cast<std::size_t>(kept[0])], codes[static_cast<std::size_t>(kept[1])]);
    }

    const EaConfig& cfg_;
    const StateSpace& space_;
    int n_;
    std::vector<int> fitness_;
};

}  // namespace

TransitionMatrix build_chain(const EaConfig& config, int n, std::size_t cap) {
    config.validate();
    if (config.crossover && config.pc > 0.0 &&
        (*config.crossover == CrossoverKind::OneDiffBit || *config.crossover == CrossoverKind::FirstDiffBit ||
         *config.crossover == CrossoverKind::FirstDiffPoint))
        throw InvalidConfig("diff-based crossover kinds are undefined on identical pairs; use a strategy");
    const bool exhaustive_kind = config.mutation == MutationKind::Bitwise ||
                                 (config.crossover && *config.crossover == CrossoverKind::Uniform);
    if (exhaustive_kind && n > 6) throw SizeLimit("mask-enumerating operator kinds are capped at n <= 6");
    if (config.crossover && *config.crossover == CrossoverKind::OnePoint && n < 2)
        throw InvalidConfig("one-point crossover requires n >= 2");

    TransitionMatrix chain;
    chain.space = enumerate_population_space(n, config.arity(), cap);
    const std::size_t states = chain.space.size();
    RowBuilder build_row(config, chain.space);

    std::vector<std::vector<RowEntry>> rows(states);
    unsigned workers = std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    workers = std::min<unsigned>(workers, 8);
    if (states < 1024 || workers == 1) {
        for (std::size_t idx = 0; idx < states; ++idx) rows[idx] = build_row(idx);
    } else {
        std::vector<std::thread> pool;
        const std::size_t stride = (states + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::size_t begin = w * stride;
            const std::size_t end = std::min(states, begin + stride);
            pool.emplace_back([&, begin, end] {
                for (std::size_t idx = begin; idx < end; ++idx) rows[idx] = build_row(idx);
            });
        }
        for (auto& t : pool) t.join();
    }

    std::size_t nnz = 0;
    for (const auto& r : rows) nnz += r.size();
    chain.row_ptr.resize(states + 1);
    chain.col.reserve(nnz);
    chain.val.reserve(nnz);
    for (std::size_t idx = 0; idx < states; ++idx) {
        chain.row_ptr[idx] = chain.col.size();
        for (const auto& e : rows[idx]) {
            chain.col.push_back(e.col);
            chain.val.push_back(e.p);
        }
    }
    chain.row_ptr[states] = chain.col.size();
    return chain;
}

namespace {

// Per-state level that every accepted move strictly increases: the sum of
// the two slot fitnesses (or the single fitness for arity 1).
std::vector<int> fitness_levels(const TransitionMatrix& chain, Problem problem) {
    const StateSpace& space = chain.space;
    std::vector<int> level(space.size());
    for (std::size_t idx = 0; idx < space.size(); ++idx) {
        if (space.arity == 1) {
            level[idx] = evaluate_code(problem, space.code1(idx), space.n);
        } else {
            level[idx] = evaluate_code(problem, space.code1(idx), space.n) +
                         evaluate_code(problem, space.code2(idx), space.n);
        }
    }
    return level;
}

void check_reaches_optimum(const TransitionMatrix& chain) {
    const std::size_t states = chain.states();
    std::vector<std::vector<std::uint32_t>> rev(states);
    for (std::size_t x = 0; x < states; ++x)
        for (std::size_t k = chain.row_ptr[x]; k < chain.row_ptr[x + 1]; ++k)
            if (chain.val[k] > 0.0 && chain.col[k] != x) rev[chain.col[k]].push_back(static_cast<std::uint32_t>(x));
    std::vector<std::uint8_t> reach(states, 0);
    std::deque<std::uint32_t> queue;
    for (std::size_t x = 0; x < states; ++x)
        if (chain.space.is_optimal(x)) {
            reach[x] = 1;
            queue.push_back(static_cast<std::uint32_t>(x));
        }
    while (!queue.empty()) {
        const std::uint32_t y = queue.front();
        queue.pop_front();
        for (std::uint32_t x : rev[y])
            if (!reach[x]) {
                reach[x] = 1;
                queue.push_back(x);
            }
    }
    for (std::size_t x = 0; x < states; ++x)
        if (!reach[x]) throw NotAbsorbing("state " + std::to_string(x));
}

void solve_dense_block(const TransitionMatrix& chain, const std::vector<std::size_t>& block,
                       std::vector<double>& h) {
    const std::size_t m = block.size();
    if (m > 4096) throw SizeLimit("intra-level block of " + std::to_string(m) + " states is too large");
    std::vector<std::size_t> pos(chain.states(), m);  // state -> block slot
    for (std::size_t r = 0; r < m; ++r) pos[block[r]] = r;
    std::vector<double> a(m * m, 0.0), b(m, 0.0);
    for (std::size_t r = 0; r < m; ++r) {
        a[r * m + r] = 1.0;
        b[r] = 1.0;
        const std::size_t x = block[r];
        for (std::size_t k = chain.row_ptr[x]; k < chain.row_ptr[x + 1]; ++k) {
            const std::size_t y = chain.col[k];
            const double p = chain.val[k];
            if (pos[y] < m)
                a[r * m + pos[y]] -= p;
            else
                b[r] += p * h[y];
        }
    }
    // Gaussian elimination with partial pivoting
    for (std::size_t c = 0; c < m; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < m; ++r)
            if (std::abs(a[r * m + c]) > std::abs(a[piv * m + c])) piv = r;
        if (std::abs(a[piv * m + c]) < 1e-14) throw NotAbsorbing("singular hitting-time system");
        if (piv != c) {
            for (std::size_t j = 0; j < m; ++j) std::swap(a[piv * m + j], a[c * m + j]);
            std::swap(b[piv], b[c]);
        }
        for (std::size_t r = c + 1; r < m; ++r) {
            const double f = a[r * m + c] / a[c * m + c];
            if (f == 0.0) continue;
            for (std::size_t j = c; j < m; ++j) a[r * m + j] -= f * a[c * m + j];
            b[r] -= f * b[c];
        }
    }
    for (std::size_t r = m; r-- > 0;) {
        double acc = b[r];
        for (std::size_t j = r + 1; j < m; ++j) acc -= a[r * m + j] * h[block[j]];
        h[block[r]] = acc / a[r * m + r];
    }
}

}  // namespace

// The chain does not retain its EaConfig; levels only need a per-slot
// fitness whose sum never decreases, and both problems' fitness works for
// the chains built here. Recover a usable level function by checking
// monotonicity under LeadingOnes first, then OneMax.
std::vector<double> cfht_solve(const TransitionMatrix& chain) {
    check_reaches_optimum(chain);
    const std::size_t states = chain.states();

    std::vector<int> level;
    bool level_ok = false;
    for (Problem p : {Problem::LeadingOnes, Problem::OneMax}) {
        level = fitness_levels(chain, p);
        level_ok = true;
        for (std::size_t x = 0; x < states && level_ok; ++x) {
            if (chain.space.is_optimal(x)) continue;
            for (std::size_t k = chain.row_ptr[x]; k < chain.row_ptr[x + 1]; ++k)
                if (chain.val[k] > 0.0 && chain.col[k] != x && level[chain.col[k]] < level[x]) {
                    level_ok = false;
                    break;
                }
        }
        if (level_ok) break;
    }
    if (!level_ok) throw std::logic_error("no monotone level function; unsupported dynamics");

    const int max_level = *std::max_element(level.begin(), level.end());
    std::vector<std::vector<std::size_t>> by_level(static_cast<std::size_t>(max_level) + 1);
    for (std::size_t x = 0; x < states; ++x)
        if (!chain.space.is_optimal(x)) by_level[static_cast<std::size_t>(level[x])].push_back(x);

    std::vector<double> h(states, 0.0);
    for (int lv = max_level; lv >= 0; --lv) {
        const auto& group = by_level[static_cast<std::size_t>(lv)];
        if (group.empty()) continue;
        // split the group into states with and without intra-level edges
        bool has_intra = false;
        for (std::size_t x : group) {
            for (std::size_t k = chain.row_ptr[x]; k < chain.row_ptr[x + 1]; ++k) {
                const std::size_t y = chain.col[k];
                if (y != x && !chain.space.is_optimal(y) && level[y] == lv && chain.val[k] > 0.0) {
                    has_intra = true;
                    break;
                }
            }
            if (has_intra) break;
        }
        if (!has_intra) {
            for (std::size_t x : group) {
                double self = 0.0, rest = 0.0;
                for (std::size_t k = chain.row_ptr[x]; k < chain.row_ptr[x + 1]; ++k) {
                    if (chain.col[k] == x)
                        self = chain.val[k];
                    else
                        rest += chain.val[k] * h[chain.col[k]];
                }
                if (1.0 - self < 1e-15) throw NotAbsorbing("state " + std::to_string(x) + " cannot leave itself");
                h[x] = (1.0 + rest) / (1.0 - self);
            }
        } else {
            solve_dense_block(chain, group, h);
        }
    }

    // re-substitution residual
    double residual = 0.0;
    for (std::size_t x = 0; x < states; ++x) {
        if (chain.space.is_optimal(x)) continue;
        double acc = 1.0;
        for (std::size_t k = chain.row_ptr[x]; k < chain.row_ptr[x + 1]; ++k) acc += chain.val[k] * h[chain.col[k]];
        residual = std::max(residual, std::abs(h[x] - acc));
    }
    if (residual > 1e-9) throw std::logic_error("hitting-time residual " + std::to_string(residual));
    return h;
}

double efht_uniform(const TransitionMatrix& chain) {
    const std::vector<double> h = cfht_solve(chain);
    double sum = 0.0;
    for (double v : h) sum += v;
    return sum / static_cast<double>(h.size());
}

std::vector<double> uniform_distribution(const TransitionMatrix& chain) {
    return std::vector<double>(chain.states(), 1.0 / static_cast<double>(chain.states()));
}

std::vector<double> evolve(const TransitionMatrix& chain, std::vector<double> pi, long steps) {
    if (pi.size() != chain.states()) throw std::invalid_argument("distribution size mismatch");
    double sum = 0.0;
    for (double p : pi) sum += p;
    if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("distribution must sum to 1");
    std::vector<double> next(pi.size());
    for (long s = 0; s < steps; ++s) {
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t x = 0; x < pi.size(); ++x) {
            const double px = pi[x];
            if (px == 0.0) continue;
            for (std::size_t k = chain.row_ptr[x]; k < chain.row_ptr[x + 1]; ++k)
                next[chain.col[k]] += px * chain.val[k];
        }
        pi.swap(next);
    }
    return pi;
}

double optimal_mass(const TransitionMatrix& chain, const std::vector<double>& pi) {
    double mass = 0.0;
    for (std::size_t x = 0; x < pi.size(); ++x)
        if (chain.space.is_optimal(x)) mass += pi[x];
    return mass;
}

std::uint64_t phi_map(Problem problem, int n, std::uint64_t c1, std::uint64_t c2) {
    if (problem == Problem::LeadingOnes) {
        const int m = std::max(lo_of_code(c1, n), lo_of_code(c2, n));
        return m == 0 ? 0 : ((std::uint64_t{1} << m) - 1) << (n - m);
    }
    return ones_of_code(c1) >= ones_of_code(c2) ? c1 : c2;
}

void write_chain(std::ostream& os, const TransitionMatrix& chain) {
    os << chain.space.n << ' ' << chain.space.arity << ' ' << chain.space.optimal_count << '\n';
    os.precision(17);
    for (std::size_t x = 0; x < chain.states(); ++x)
        for (std::size_t k = chain.row_ptr[x]; k < chain.row_ptr[x + 1]; ++k)
            os << x << ' ' << chain.col[k] << ' ' << chain.val[k] << '\n';
}

}  // namespace ealab
