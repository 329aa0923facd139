#include "ealab/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace ealab {

BitString mutate(MutationKind kind, const BitString& s, Rng& rng) {
    const std::size_t n = s.size();
    BitString out = s;
    switch (kind) {
        case MutationKind::OneBit: {
            out.flip(1 + rng.next_below(static_cast<std::uint32_t>(n)));
            break;
        }
        case MutationKind::Bitwise: {
            const double rate = 1.0 / static_cast<double>(n);
            for (std::size_t pos = 1; pos <= n; ++pos)
                if (rng.next_unit() < rate) out.flip(pos);
            break;
        }
    }
    return out;
}

int first_diff_position(const BitString& s1, const BitString& s2) {
    for (std::size_t pos = 1; pos <= s1.size(); ++pos)
        if (s1.bit(pos) != s2.bit(pos)) return static_cast<int>(pos);
    return 0;
}

namespace {

std::pair<BitString, BitString> exchange_positions(const BitString& s1, const BitString& s2, std::size_t from,
                                                   std::size_t to) {
    BitString o1 = s1, o2 = s2;
    for (std::size_t pos = from; pos <= to; ++pos) {
        o1.set_bit(pos, s2.bit(pos));
        o2.set_bit(pos, s1.bit(pos));
    }
    return {std::move(o1), std::move(o2)};
}

}  // namespace

std::pair<BitString, BitString> crossover(CrossoverKind kind, const BitString& s1, const BitString& s2, Rng& rng) {
    const std::size_t n = s1.size();
    if (s1.size() != s2.size()) throw std::invalid_argument("crossover parents must have equal length");
    switch (kind) {
        case CrossoverKind::OnePoint: {
            if (n < 2) throw std::invalid_argument("one-point crossover requires n >= 2");
            const std::size_t cut = 1 + rng.next_below(static_cast<std::uint32_t>(n - 1));
            return exchange_positions(s1, s2, cut + 1, n);
        }
        case CrossoverKind::Uniform: {
            const double rate = 1.0 / static_cast<double>(n);
            BitString o1 = s1, o2 = s2;
            for (std::size_t pos = 1; pos <= n; ++pos) {
                if (rng.next_unit() < rate) {
                    o1.set_bit(pos, s2.bit(pos));
                    o2.set_bit(pos, s1.bit(pos));
                }
            }
            return {std::move(o1), std::move(o2)};
        }
        case CrossoverKind::OneBitX: {
            const std::size_t pos = 1 + rng.next_below(static_cast<std::uint32_t>(n));
            return exchange_positions(s1, s2, pos, pos);
        }
        case CrossoverKind::OneDiffBit: {
            std::vector<std::size_t> diff;
            for (std::size_t pos = 1; pos <= n; ++pos)
                if (s1.bit(pos) != s2.bit(pos)) diff.push_back(pos);
            if (diff.empty()) throw IdenticalParents();
            const std::size_t pos = diff[rng.next_below(static_cast<std::uint32_t>(diff.size()))];
            return exchange_positions(s1, s2, pos, pos);
        }
        case CrossoverKind::FirstDiffBit: {
            const int pos = first_diff_position(s1, s2);
            if (pos == 0) throw IdenticalParents();
            return exchange_positions(s1, s2, pos, pos);
        }
        case CrossoverKind::FirstDiffPoint: {
            const int pos = first_diff_position(s1, s2);
            if (pos == 0) throw IdenticalParents();
            return exchange_positions(s1, s2, pos, n);
        }
    }
    throw std::logic_error("unreachable");
}

std::vector<CodeOutcome> enumerate_mutation(MutationKind kind, std::uint64_t c, int n) {
    std::vector<CodeOutcome> out;
    switch (kind) {
        case MutationKind::OneBit: {
            out.reserve(static_cast<std::size_t>(n));
            const double p = 1.0 / n;
            for (int pos = 1; pos <= n; ++pos) out.push_back({c ^ position_mask(pos, n), p});
            break;
        }
        case MutationKind::Bitwise: {
            const std::size_t masks = 1ULL << n;
            out.reserve(masks);
            const double rate = 1.0 / n;
            for (std::uint64_t m = 0; m < masks; ++m) {
                const int flips = std::popcount(m);
                const double p = std::pow(rate, flips) * std::pow(1.0 - rate, n - flips);
                out.push_back({c ^ m, p});
            }
            break;
        }
    }
    return out;
}

std::vector<PairOutcome> enumerate_crossover(CrossoverKind kind, std::uint64_t c1, std::uint64_t c2, int n) {
    std::vector<PairOutcome> out;
    auto push_mask = [&](std::uint64_t mask, double p) {
        auto [o1, o2] = exchange(c1, c2, mask);
        out.push_back({o1, o2, p});
    };
    switch (kind) {
        case CrossoverKind::OnePoint: {
            if (n < 2) throw std::invalid_argument("one-point crossover requires n >= 2");
            const double p = 1.0 / (n - 1);
            for (int cut = 1; cut <= n - 1; ++cut) push_mask(suffix_mask_from(cut + 1, n), p);
            break;
        }
        case CrossoverKind::Uniform: {
            const std::size_t masks = 1ULL << n;
            const double rate = 1.0 / n;
            for (std::uint64_t m = 0; m < masks; ++m) {
                const int swaps = std::popcount(m);
                push_mask(m, std::pow(rate, swaps) * std::pow(1.0 - rate, n - swaps));
            }
            break;
        }
        case CrossoverKind::OneBitX: {
            const double p = 1.0 / n;
            for (int pos = 1; pos <= n; ++pos) push_mask(position_mask(pos, n), p);
            break;
        }
        case CrossoverKind::OneDiffBit: {
            const std::uint64_t d = c1 ^ c2;
            if (d == 0) throw IdenticalParents();
            const int count = std::popcount(d);
            const double p = 1.0 / count;
            for (int pos = 1; pos <= n; ++pos)
                if (d & position_mask(pos, n)) push_mask(position_mask(pos, n), p);
            break;
        }
        case CrossoverKind::FirstDiffBit: {
            const int pos = first_diff_position_code(c1, c2, n);
            if (pos == 0) throw IdenticalParents();
            push_mask(position_mask(pos, n), 1.0);
            break;
        }
        case CrossoverKind::FirstDiffPoint: {
            const int pos = first_diff_position_code(c1, c2, n);
            if (pos == 0) throw IdenticalParents();
            push_mask(suffix_mask_from(pos, n), 1.0);
            break;
        }
    }
    return out;
}

}  // namespace ealab
