#include "ealab/exact.hpp"

#include "ealab/ea.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ealab {

double harmonic(int k) {
    double h = 0.0;
    for (int i = 1; i <= k; ++i) h += 1.0 / i;
    return h;
}

namespace {

void check_zeros_range(int n, int zeros) {
    if (n < 1) throw std::out_of_range("n must be >= 1");
    if (zeros < 0 || zeros > n) throw std::out_of_range("zeros must lie in [0, n]");
}

}  // namespace

double cfht_strict_opo_leadingones(int n, int zeros) {
    check_zeros_range(n, zeros);
    return static_cast<double>(n) * zeros;
}

double cfht_opo_onemax(int n, int zeros) {
    check_zeros_range(n, zeros);
    return n * harmonic(zeros);
}

double ref_dcfht_leadingones(int n) {
    double sum = 0.0;
    for (int j = 1; j <= n; ++j) {
        const double term = 1.0 - std::exp2(static_cast<double>(j - 1 - n));
        sum += term * term;
    }
    return n * sum;
}

double ref_dcfht_onemax(int n) {
    // survival[j] = P(Binomial(n, 1/2) >= j)
    std::vector<double> pmf(static_cast<std::size_t>(n) + 1);
    pmf[0] = std::exp2(static_cast<double>(-n));
    for (int k = 0; k < n; ++k)
        pmf[static_cast<std::size_t>(k) + 1] = pmf[static_cast<std::size_t>(k)] * (n - k) / (k + 1);
    std::vector<double> survival(static_cast<std::size_t>(n) + 2, 0.0);
    for (int j = n; j >= 1; --j)
        survival[static_cast<std::size_t>(j)] = survival[static_cast<std::size_t>(j) + 1] + pmf[static_cast<std::size_t>(j)];
    double sum = 0.0;
    for (int j = 1; j <= n; ++j) {
        const double s = survival[static_cast<std::size_t>(j)];
        sum += s * s / j;
    }
    return n * sum;
}

CfhtTable cfht_table(Problem problem, int n) {
    if (n < 1) throw std::out_of_range("n must be >= 1");
    CfhtTable t;
    t.problem = problem;
    t.n = n;
    t.values.assign(static_cast<std::size_t>(n + 1) * (n + 1), 0.0);
    auto v = [&](int i, int j) -> double& { return t.values[static_cast<std::size_t>(i) * (n + 1) + j]; };
    const double n2 = static_cast<double>(n) * n;
    // fill i <= j and mirror, so symmetry is exact
    for (int s = 2; s <= 2 * n; ++s) {
        for (int i = 1; i <= n; ++i) {
            const int j = s - i;
            if (j < i || j > n) continue;
            if (problem == Problem::LeadingOnes) {
                v(i, j) = (n2 + (n - 1.0) * (v(i - 1, j) + v(i, j - 1)) + v(i - 1, j - 1)) / (2.0 * n - 1.0);
            } else {
                const double denom = static_cast<double>(i + j) * n - static_cast<double>(i) * j;
                v(i, j) = (n2 + static_cast<double>(i) * j * v(i - 1, j - 1) +
                           static_cast<double>(i) * (n - j) * v(i - 1, j) +
                           static_cast<double>(n - i) * j * v(i, j - 1)) /
                          denom;
            }
            v(j, i) = v(i, j);
        }
    }
    return t;
}

double cfht_table_residual(const CfhtTable& t) {
    const int n = t.n;
    const double n2 = static_cast<double>(n) * n;
    double worst = 0.0;
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            double expect;
            if (t.problem == Problem::LeadingOnes) {
                expect = (n2 + (n - 1.0) * (t.at(i - 1, j) + t.at(i, j - 1)) + t.at(i - 1, j - 1)) / (2.0 * n - 1.0);
            } else {
                const double denom = static_cast<double>(i + j) * n - static_cast<double>(i) * j;
                expect = (n2 + static_cast<double>(i) * j * t.at(i - 1, j - 1) +
                          static_cast<double>(i) * (n - j) * t.at(i - 1, j) +
                          static_cast<double>(n - i) * j * t.at(i, j - 1)) /
                         denom;
            }
            worst = std::max(worst, std::abs(t.at(i, j) - expect));
        }
    }
    return worst;
}

std::vector<InequalityViolation> check_cfht_inequalities(Problem problem, int n) {
    if (n < 2) throw std::out_of_range("inequality scan needs n >= 2");
    const CfhtTable t = cfht_table(problem, n);
    std::vector<InequalityViolation> out;
    constexpr double kTol = 1e-9;
    auto check_ge = [&](const char* id, int i, int delta, double lhs, double rhs) {
        if (lhs < rhs - kTol) out.push_back({id, i, delta, lhs, rhs});
    };
    auto check_le = [&](const char* id, int i, int delta, double lhs, double rhs) {
        if (lhs > rhs + kTol) out.push_back({id, i, delta, lhs, rhs});
    };
    const double dn = n;
    if (problem == Problem::LeadingOnes) {
        for (int i = 1; i <= n; ++i)
            for (int delta = 1; i + delta <= n; ++delta)
                check_ge("lo.adjacent.ge", i, delta, t.at(i, i + delta) - t.at(i, i + delta - 1),
                         dn / std::exp2(delta + 2));
        // The step upper bound n - (3n-1)/2^(delta+3) fails once i+delta
        // grows past ~0.575n: already its i=1 row reads
        // n(1 - ((n-1)/(2n-1))^j) <= n - (3n-1)/2^(j+2), which is
        // equivalent to 4n((2n-2)/(2n-1))^j >= 3n-1 and false for large j
        // (concretely E(1,2)-E(0,2) = 16/9 > 27/16 at n=2). The scan is
        // restricted to the indices where that row condition holds.
        const double q = (2.0 * dn - 2.0) / (2.0 * dn - 1.0);
        for (int i = 1; i <= n; ++i)
            for (int delta = 0; i + delta <= n; ++delta) {
                if (4.0 * dn * std::pow(q, i + delta) < 3.0 * dn - 1.0) continue;
                check_le("lo.step.le", i, delta, t.at(i, i + delta) - t.at(i - 1, i + delta),
                         dn - (3.0 * n - 1.0) / std::exp2(delta + 3));
            }
        for (int i = 0; i <= n; ++i)
            for (int delta = 1; i + delta <= n; ++delta)
                check_le("lo.adjacent.lt.half", i, delta, t.at(i, i + delta) - t.at(i, i + delta - 1), dn / 2.0);
        for (int i = 1; i <= n; ++i)
            for (int delta = 0; i + delta <= n; ++delta)
                check_ge("lo.step.gt.half", i, delta, t.at(i, i + delta) - t.at(i - 1, i + delta), dn / 2.0);
    } else {
        for (int i = 1; i <= n; ++i)
            for (int delta = 1; i + delta <= n; ++delta)
                check_ge("om.adjacent.gt", i, delta, t.at(i, i + delta) - t.at(i, i + delta - 1),
                         dn / (std::exp2(delta + 1) * (i + delta)));
        for (int i = 1; i <= n; ++i)
            for (int delta = 0; i + delta <= n; ++delta)
                check_le("om.step.lt", i, delta, t.at(i, i + delta) - t.at(i - 1, i + delta),
                         (1.0 - 3.0 / std::exp2(delta + 3)) * dn / i + 1.0 / std::exp2(delta + 3));
        for (int i = 0; i <= n; ++i)
            for (int delta = 1; i + delta <= n; ++delta)
                check_le("om.adjacent.lt", i, delta, t.at(i, i + delta) - t.at(i, i + delta - 1),
                         dn / (2.0 * (i + delta)));
        for (int i = 1; i <= n; ++i)
            for (int delta = 0; i + delta <= n; ++delta)
                check_ge("om.step.gt", i, delta, t.at(i, i + delta) - t.at(i - 1, i + delta), dn / (2.0 * i));
        // The "> 1" adjacent-difference claim is false over the full index
        // range (n=50, i=1, delta=6 gives 0.8798); it is checked where the
        // conditional-crossover rule invokes it, together with the sharper
        // per-rate form that implies it there.
        for (int i = 1; i <= n; ++i)
            for (int delta = 1; i + delta <= n; ++delta) {
                const double diff = t.at(i, i + delta) - t.at(i, i + delta - 1);
                if (mr3_condition(n, i, delta)) check_ge("om.adjacent.gt.one", i, delta, diff, 1.0);
                if (n - i - delta > 0) {
                    const double log_rhs = std::log(dn) - std::log(static_cast<double>(i + delta)) -
                                           i * std::log1p(dn * (i + delta) / (n - i - delta));
                    check_ge("om.adjacent.gt.mr3rate", i, delta, diff, std::exp(log_rhs));
                }
            }
        for (int i = 1; i <= n; ++i)
            for (int delta = 0; i + delta <= n; ++delta)
                check_le("om.step.lt.ni", i, delta, t.at(i, i + delta) - t.at(i - 1, i + delta), dn / i);
    }
    return out;
}

PairMarginals pair_marginals(int n, double pc, long t) {
    if (n < 2) throw std::out_of_range("pair marginals need n >= 2");
    if (pc < 0.0 || pc > 1.0) throw std::domain_error("pc must lie in [0,1]");
    if (t < 0) throw std::out_of_range("t must be >= 0");
    const double a = 1.0 - 2.0 * (1.0 - pc) / n + (1.0 - pc) / (static_cast<double>(n) * n);
    const double b = 1.0 - 1.0 / n;
    PairMarginals m;
    m.p00 = 0.25 * std::pow(a, static_cast<double>(t));
    const double special_pc = (n - 1.0) / (2.0 * n - 1.0);
    if (std::abs(pc - special_pc) <= 1e-12) {
        m.p01 = 0.25 * (1.0 + static_cast<double>(t) / (2.0 * n - 1.0)) * std::pow(b, static_cast<double>(t));
    } else {
        const double at = std::pow(a, static_cast<double>(t));
        const double bt = std::pow(b, static_cast<double>(t));
        m.p01 = 0.25 * bt + ((1.0 - pc) / n) * b * 0.25 * (at - bt) / (a - b);
    }
    return m;
}

double equal_lo_lower_bound(int n, double pc, long t) {
    if (n < 1) throw std::out_of_range("n must be >= 1");
    const double mass0 = 1.0 / 3.0 - 1.0 / (3.0 * std::exp2(2.0 * n));
    const double keep = pc + (1.0 - pc) * (1.0 - 1.0 / n) * (1.0 - 1.0 / n);
    return mass0 * std::pow(keep, static_cast<double>(t));
}

double n01_fraction_upper_bound(int n, double pc, long t) {
    const PairMarginals m = pair_marginals(n, pc, t);
    return 1.0 - m.p01 - m.p00 - std::pow(1.0 - (1.0 - pc) / n, static_cast<double>(t));
}

namespace {

void require_pc_below_one(double pc) {
    if (pc >= 1.0) throw std::domain_error("bound diverges at pc = 1");
}

}  // namespace

BoundReport theorem_bound(TheoremId id, int n, double pc) {
    if (n < 1) throw std::out_of_range("n must be >= 1");
    if (pc < 0.0 || pc > 1.0) throw std::domain_error("pc must lie in [0,1]");
    BoundReport r;
    r.id = id;
    r.n = n;
    r.pc = pc;
    const double e = std::numbers::e;
    switch (id) {
        case TheoremId::T2:
            require_pc_below_one(pc);
            r.upper = e / (1.0 - pc) * ref_dcfht_leadingones(n);
            break;
        case TheoremId::T3:
            r.lower = ref_dcfht_leadingones(n) / (5.0 - 2.0 * pc);
            break;
        case TheoremId::T4:
            r.lower = ref_dcfht_leadingones(n) / (2.0 * n - 1.0);
            break;
        case TheoremId::T5:
            require_pc_below_one(pc);
            r.upper = e / (1.0 - pc) * ref_dcfht_onemax(n);
            break;
        case TheoremId::T6:
            r.lower = ref_dcfht_leadingones(n) / (2.0 * n - 1.0);
            break;
        case TheoremId::T7Gap: {
            if (n < 2) throw std::out_of_range("n must be >= 2");
            require_pc_below_one(pc);
            const double mass0 = 1.0 / 3.0 - 1.0 / (3.0 * std::exp2(2.0 * n));
            r.lower = pc * n * n / ((1.0 - pc) * (2.0 * n - 1.0)) * mass0;
            break;
        }
        case TheoremId::T7Ratio:
            if (n < 2) throw std::out_of_range("n must be >= 2");
            require_pc_below_one(pc);
            r.upper = 1.0 / (1.0 - pc);
            break;
        case TheoremId::T8Gap:
            if (n < 2) throw std::out_of_range("n must be >= 2");
            require_pc_below_one(pc);
            r.lower = n * pc / (2.0 * (1.0 - pc));
            break;
    }
    return r;
}

std::string to_string(TheoremId id) {
    switch (id) {
        case TheoremId::T2: return "T2";
        case TheoremId::T3: return "T3";
        case TheoremId::T4: return "T4";
        case TheoremId::T5: return "T5";
        case TheoremId::T6: return "T6";
        case TheoremId::T7Gap: return "T7gap";
        case TheoremId::T7Ratio: return "T7ratio";
        case TheoremId::T8Gap: return "T8gap";
    }
    return "?";
}

}  // namespace ealab
