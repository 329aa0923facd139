#include "ealab/audit.hpp"

#include <cmath>
#include <map>
#include <sstream>

namespace ealab {

namespace {

constexpr double kRowTol = 1e-12;
constexpr double kUniformTol = 1e-9;

std::string state_name(const StateSpace& space, std::size_t idx) {
    std::ostringstream os;
    os << BitString::from_code(space.code1(idx), static_cast<std::size_t>(space.n)).to_string() << ','
       << BitString::from_code(space.code2(idx), static_cast<std::size_t>(space.n)).to_string();
    return os.str();
}

// Analytic row for the LeadingOnes chain: acceptance happens only when a
// solution's first zero flips, either by mutation or by the one-bit
// exchange at a position where the better solution holds a 1.
void predicted_row_leadingones(const StateSpace& space, std::size_t idx, double pc,
                               std::map<std::size_t, double>& pred) {
    const int n = space.n;
    const std::uint64_t c1 = space.code1(idx);
    const std::uint64_t c2 = space.code2(idx);
    const int lo1 = lo_of_code(c1, n);
    const int lo2 = lo_of_code(c2, n);
    const std::uint64_t f1 = c1 | position_mask(lo1 + 1, n);  // first zero of s1 flipped
    const std::uint64_t f2 = c2 | position_mask(lo2 + 1, n);
    const double dn = n;
    const double mut_one = (dn - 1.0) / (dn * dn);
    const double mut_both = 1.0 / (dn * dn);
    const double mut_stay = (dn - 1.0) * (dn - 1.0) / (dn * dn);
    if (lo1 == lo2) {
        pred[space.index(f1, c2)] += (1.0 - pc) * mut_one;
        pred[space.index(c1, f2)] += (1.0 - pc) * mut_one;
        pred[space.index(f1, f2)] += (1.0 - pc) * mut_both;
        pred[idx] += pc + (1.0 - pc) * mut_stay;
        return;
    }
    // relabel so w = slot with fewer leading ones, b = the other
    const bool slot1_worse = lo1 < lo2;
    const std::uint64_t cw = slot1_worse ? c1 : c2;
    const std::uint64_t fw = slot1_worse ? f1 : f2;
    const std::uint64_t fb = slot1_worse ? f2 : f1;
    const std::uint64_t cb = slot1_worse ? c2 : c1;
    const int lob = slot1_worse ? lo2 : lo1;
    auto pack = [&](std::uint64_t w, std::uint64_t b) {
        return slot1_worse ? space.index(w, b) : space.index(b, w);
    };
    const bool worse_has_one_at_better_zero = (cw & position_mask(lob + 1, n)) != 0;
    pred[pack(fw, cb)] += pc / dn + (1.0 - pc) * mut_one;
    if (worse_has_one_at_better_zero) {
        pred[pack(cw, fb)] += pc / dn + (1.0 - pc) * mut_one;
        pred[idx] += pc * (dn - 2.0) / dn + (1.0 - pc) * mut_stay;
    } else {
        pred[pack(cw, fb)] += (1.0 - pc) * mut_one;
        pred[idx] += pc * (dn - 1.0) / dn + (1.0 - pc) * mut_stay;
    }
    pred[pack(fw, fb)] += (1.0 - pc) * mut_both;
}

void compare_rows_leadingones(const TransitionMatrix& chain, double pc, std::vector<AuditDiscrepancy>& out) {
    const StateSpace& space = chain.space;
    for (std::size_t idx = 0; idx < space.size(); ++idx) {
        if (space.is_optimal(idx)) continue;
        std::map<std::size_t, double> pred;
        predicted_row_leadingones(space, idx, pc, pred);
        std::map<std::size_t, double> actual;
        for (std::size_t k = chain.row_ptr[idx]; k < chain.row_ptr[idx + 1]; ++k)
            actual[chain.col[k]] = chain.val[k];
        for (const auto& [y, p] : pred) {
            const auto it = actual.find(y);
            const double got = it == actual.end() ? 0.0 : it->second;
            if (std::abs(got - p) > kRowTol)
                out.push_back({"row " + state_name(space, idx) + " -> " + state_name(space, y), idx, p, got});
        }
        for (const auto& [y, p] : actual)
            if (!pred.contains(y) && p > kRowTol)
                out.push_back({"unexpected target " + state_name(space, y) + " from " + state_name(space, idx), idx,
                               0.0, p});
    }
}

// Analytic class masses for the OneMax chain: i, j zero-counts, k the
// number of positions carrying (0,1).
void compare_rows_onemax(const TransitionMatrix& chain, double pc, std::vector<AuditDiscrepancy>& out) {
    const StateSpace& space = chain.space;
    const int n = space.n;
    const double dn = n;
    const std::uint64_t full = optimum_code(n);
    for (std::size_t idx = 0; idx < space.size(); ++idx) {
        if (space.is_optimal(idx)) continue;
        const std::uint64_t c1 = space.code1(idx);
        const std::uint64_t c2 = space.code2(idx);
        const int i = n - ones_of_code(c1);
        const int j = n - ones_of_code(c2);
        const int k01 = ones_of_code(~c1 & c2 & full);
        double both = 0.0, slot2_only = 0.0, slot1_only = 0.0, stay = 0.0, other = 0.0;
        for (std::size_t kk = chain.row_ptr[idx]; kk < chain.row_ptr[idx + 1]; ++kk) {
            const std::uint64_t y1 = space.code1(chain.col[kk]);
            const std::uint64_t y2 = space.code2(chain.col[kk]);
            const double p = chain.val[kk];
            const bool s1_improved = y1 != c1;
            const bool s2_improved = y2 != c2;
            if (!s1_improved && !s2_improved)
                stay += p;
            else if (s1_improved && s2_improved)
                both += p;
            else if (s2_improved)
                slot2_only += p;
            else
                slot1_only += p;
            const bool plausible1 = !s1_improved || (ones_of_code(y1) == n - i + 1 && (y1 & c1) == c1);
            const bool plausible2 = !s2_improved || (ones_of_code(y2) == n - j + 1 && (y2 & c2) == c2);
            if (!plausible1 || !plausible2) other += p;
        }
        auto expect = [&](const char* what, double got, double want) {
            if (std::abs(got - want) > kRowTol)
                out.push_back({std::string(what) + " from " + state_name(space, idx), idx, want, got});
        };
        expect("both-improve mass", both, (1.0 - pc) * i * j / (dn * dn));
        expect("slot2-improve mass", slot2_only, pc * (j - i + k01) / dn + (1.0 - pc) * (dn - i) * j / (dn * dn));
        expect("slot1-improve mass", slot1_only, pc * k01 / dn + (1.0 - pc) * (dn - j) * i / (dn * dn));
        expect("stay mass", stay, pc * (dn + i - j - 2.0 * k01) / dn + (1.0 - pc) * (dn - i) * (dn - j) / (dn * dn));
        expect("non-single-zero-flip mass", other, 0.0);
    }
}

// Conditional-uniformity statements that the dynamics preserve exactly.
//
// With mutation only, the law of the evolved pair is constant on each
// class of non-optimal states sharing (LO_1, LO_2) (LeadingOnes) resp. the
// zero-count pair (OneMax); equivalently the bits after each first zero
// are uniform given the pair of prefix lengths. Once the one-bit exchange
// is switched on, the joint statement breaks (the exchange at the better
// solution's first zero selects for a 1 in the worse solution's suffix;
// at n = 3 the class (LO_1, LO_2) = (0, 2) deviates by ~p_c/192 after one
// step), so for p_c > 0 only the statements that position symmetry forces
// remain checkable: on OneMax the law is constant on each
// (N(0,0), N(0,1), N(1,0)) profile class and each slot's marginal is
// constant on its one-count class, for every p_c.
void uniformity_checks(const TransitionMatrix& chain, Problem problem, double pc, long horizon,
                       std::vector<AuditDiscrepancy>& out) {
    const StateSpace& space = chain.space;
    const int n = space.n;
    std::vector<double> pi = uniform_distribution(chain);
    for (long t = 0; t <= horizon; ++t) {
        if (t > 0) pi = evolve(chain, std::move(pi), 1);
        auto scan_classes = [&](auto key_of, const char* what) {
            std::map<decltype(key_of(std::size_t{0})), std::pair<double, double>> agg;  // key -> (mass, max p)
            std::map<decltype(key_of(std::size_t{0})), std::pair<double, std::size_t>> ext;  // key -> (min p, count)
            for (std::size_t idx = 0; idx < space.size(); ++idx) {
                if (space.is_optimal(idx)) continue;
                const auto key = key_of(idx);
                auto& a = agg[key];
                auto& e = ext.try_emplace(key, std::numeric_limits<double>::infinity(), 0).first->second;
                a.first += pi[idx];
                a.second = std::max(a.second, pi[idx]);
                e.first = std::min(e.first, pi[idx]);
                ++e.second;
            }
            for (const auto& [key, a] : agg) {
                const auto& e = ext[key];
                if (a.first < 1e-12) continue;
                const double uniform = a.first / static_cast<double>(e.second);
                const double dev = std::max(a.second - uniform, uniform - e.first) / a.first;
                if (dev > kUniformTol) {
                    std::ostringstream os;
                    os << what << " class deviates at t=" << t;
                    out.push_back({os.str(), 0, uniform, dev});
                }
            }
        };
        if (pc == 0.0) {
            if (problem == Problem::LeadingOnes) {
                scan_classes(
                    [&](std::size_t idx) {
                        return std::pair<int, int>{lo_of_code(space.code1(idx), n), lo_of_code(space.code2(idx), n)};
                    },
                    "prefix-pair");
            } else {
                scan_classes(
                    [&](std::size_t idx) {
                        return std::pair<int, int>{ones_of_code(space.code1(idx)), ones_of_code(space.code2(idx))};
                    },
                    "count-pair");
            }
        } else if (problem == Problem::OneMax) {
            const std::uint64_t full = optimum_code(n);
            scan_classes(
                [&](std::size_t idx) {
                    const std::uint64_t c1 = space.code1(idx);
                    const std::uint64_t c2 = space.code2(idx);
                    return std::tuple<int, int, int>{ones_of_code(~c1 & ~c2 & full), ones_of_code(~c1 & c2 & full),
                                                     ones_of_code(c1 & ~c2 & full)};
                },
                "pair-profile");
        }
        // per-slot marginal law given the slot's own statistic
        if (pc > 0.0 && problem == Problem::LeadingOnes) continue;
        for (int slot = 1; slot <= 2; ++slot) {
            std::vector<double> marginal(std::size_t{1} << n, 0.0);
            for (std::size_t idx = 0; idx < space.size(); ++idx) {
                const std::uint64_t c = slot == 1 ? space.code1(idx) : space.code2(idx);
                marginal[c] += pi[idx];
            }
            std::map<int, std::pair<double, double>> agg;
            std::map<int, std::pair<double, std::size_t>> ext;
            for (std::uint64_t c = 0; c < marginal.size(); ++c) {
                if (c == optimum_code(n)) continue;
                const int key = problem == Problem::LeadingOnes ? lo_of_code(c, n) : ones_of_code(c);
                auto& a = agg[key];
                auto& e = ext.try_emplace(key, std::numeric_limits<double>::infinity(), 0).first->second;
                a.first += marginal[c];
                a.second = std::max(a.second, marginal[c]);
                e.first = std::min(e.first, marginal[c]);
                ++e.second;
            }
            for (const auto& [key, a] : agg) {
                const auto& e = ext[key];
                if (a.first < 1e-12) continue;
                const double uniform = a.first / static_cast<double>(e.second);
                const double dev = std::max(a.second - uniform, uniform - e.first) / a.first;
                if (dev > kUniformTol) {
                    std::ostringstream os;
                    os << "slot-" << slot << " marginal class " << key << " deviates at t=" << t;
                    out.push_back({os.str(), 0, uniform, dev});
                }
            }
        }
    }
}

}  // namespace

std::vector<AuditDiscrepancy> transition_audit(const EaConfig& config, int n, long uniformity_horizon) {
    config.validate();
    if (config.algorithm != Algorithm::TwoColonTwo || config.mutation != MutationKind::OneBit ||
        config.strategy || (config.crossover && *config.crossover != CrossoverKind::OneBitX) ||
        config.tie != TiePolicy::KeepParent)
        throw InvalidConfig("audit covers the (2:2) chain with one-bit mutation and optional one-bit crossover");
    if (n > 6) throw SizeLimit("audit is exhaustive; n <= 6");

    const TransitionMatrix chain = build_chain(config, n);
    const double pc = config.crossover ? config.pc : 0.0;
    std::vector<AuditDiscrepancy> out;
    if (config.problem == Problem::LeadingOnes)
        compare_rows_leadingones(chain, pc, out);
    else
        compare_rows_onemax(chain, pc, out);
    uniformity_checks(chain, config.problem, pc, uniformity_horizon, out);
    return out;
}

}  // namespace ealab
