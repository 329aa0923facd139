#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ealab/bitstring.hpp"
#include "ealab/errors.hpp"
#include "ealab/rng.hpp"

namespace ealab {

enum class MutationKind { OneBit, Bitwise };

enum class CrossoverKind { OnePoint, Uniform, OneBitX, OneDiffBit, FirstDiffBit, FirstDiffPoint };

// One-bit: flip one uniformly chosen position. Bitwise: flip each position
// independently with probability 1/n. The input is not modified.
BitString mutate(MutationKind kind, const BitString& s, Rng& rng);

// All kinds only exchange bits between the parents, never create them:
// for every position a, {out1(a), out2(a)} == {s1(a), s2(a)}.
// The uniform kind swaps each position with probability 1/n.
// One-point requires n >= 2; the three diff-based kinds throw
// IdenticalParents when s1 == s2.
std::pair<BitString, BitString> crossover(CrossoverKind kind, const BitString& s1, const BitString& s2, Rng& rng);

// First position (1-based) where the parents differ; 0 if identical.
int first_diff_position(const BitString& s1, const BitString& s2);

// --- exact outcome enumeration over integer codes (n <= 63) -------------
//
// The chain machinery derives transition rows from these finite outcome
// distributions instead of sampling, so the Monte Carlo path and the exact
// path share the operator definitions below.

struct CodeOutcome {
    std::uint64_t code;
    double prob;
};

struct PairOutcome {
    std::uint64_t o1;
    std::uint64_t o2;
    double prob;
};

std::vector<CodeOutcome> enumerate_mutation(MutationKind kind, std::uint64_t c, int n);
std::vector<PairOutcome> enumerate_crossover(CrossoverKind kind, std::uint64_t c1, std::uint64_t c2, int n);

// Swap mask helpers on codes (position a <-> code bit n-a).
inline std::uint64_t position_mask(int pos, int n) { return 1ULL << (n - pos); }

inline std::uint64_t suffix_mask_from(int pos, int n) {
    // positions pos..n
    return (1ULL << (n - pos + 1)) - 1;
}

inline std::pair<std::uint64_t, std::uint64_t> exchange(std::uint64_t c1, std::uint64_t c2, std::uint64_t mask) {
    return {(c1 & ~mask) | (c2 & mask), (c2 & ~mask) | (c1 & mask)};
}

inline int first_diff_position_code(std::uint64_t c1, std::uint64_t c2, int n) {
    std::uint64_t d = c1 ^ c2;
    if (d == 0) return 0;
    return n - (63 - std::countl_zero(d));
}

}  // namespace ealab
