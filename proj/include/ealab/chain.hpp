#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "ealab/ea.hpp"

namespace ealab {

// Enumerated population space over ordered tuples of solutions. Solutions
// are integer codes; a 2-solution state packs the pair as (c1 << n) | c2.
// The optimal subset is every state containing the all-ones solution.
struct StateSpace {
    int n = 0;
    int arity = 1;
    std::vector<std::uint8_t> optimal;  // per state
    std::size_t optimal_count = 0;

    std::size_t size() const { return std::size_t{1} << (n * arity); }
    std::size_t index(std::uint64_t c1) const { return c1; }
    std::size_t index(std::uint64_t c1, std::uint64_t c2) const { return (c1 << n) | c2; }
    std::uint64_t code1(std::size_t idx) const { return arity == 2 ? (idx >> n) : idx; }
    std::uint64_t code2(std::size_t idx) const { return idx & ((std::uint64_t{1} << n) - 1); }
    bool is_optimal(std::size_t idx) const { return optimal[idx] != 0; }
};

inline constexpr std::size_t kDefaultStateCap = std::size_t{1} << 20;

StateSpace enumerate_population_space(int n, int arity, std::size_t cap = kDefaultStateCap);

// Row-stochastic one-step transition matrix, CSR storage, rows sorted by
// column. Rows of optimal states keep all mass inside the optimal set
// (the best-so-far solution is never displaced), so the chain is
// absorbing; every row sum is validated to within 1e-12 at construction.
struct TransitionMatrix {
    StateSpace space;
    std::vector<std::size_t> row_ptr;
    std::vector<std::uint32_t> col;
    std::vector<double> val;

    std::size_t states() const { return space.size(); }
};

// Exact rows by enumeration of operator outcomes followed by deterministic
// selection; no sampling. Bitwise mutation and uniform crossover enumerate
// all 2^n masks per solution, so those kinds are capped at n <= 6.
TransitionMatrix build_chain(const EaConfig& config, int n, std::size_t cap = kDefaultStateCap);

// Hitting times h = 1 + Q h on non-optimal states (h = 0 on the optimal
// set), solved level by level in decreasing total fitness with a dense
// solve for any block the dynamics do not leave immediately. Throws
// NotAbsorbing when some state cannot reach the optimal set.
std::vector<double> cfht_solve(const TransitionMatrix& chain);

// Mean of the hitting-time vector over all states (uniform initial law).
double efht_uniform(const TransitionMatrix& chain);

std::vector<double> uniform_distribution(const TransitionMatrix& chain);

// pi_{t+1}(y) = sum_x pi_t(x) P(x -> y), `steps` times.
std::vector<double> evolve(const TransitionMatrix& chain, std::vector<double> pi, long steps);

double optimal_mass(const TransitionMatrix& chain, const std::vector<double>& pi);

// Projection of a 2-solution state onto the single-solution space:
// LeadingOnes keeps the best prefix as the canonical string 1^m 0^(n-m);
// OneMax keeps the member with the larger one-count (ties to slot 1).
// Optimality is preserved in both directions.
std::uint64_t phi_map(Problem problem, int n, std::uint64_t c1, std::uint64_t c2);

// Plain-text sparse triplet export: header "n arity optimal_count", then
// one "row col probability" line per nonzero.
void write_chain(std::ostream& os, const TransitionMatrix& chain);

}  // namespace ealab
