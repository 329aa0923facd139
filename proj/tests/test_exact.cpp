#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ealab/exact.hpp"

using namespace ealab;

namespace {

// Independent route for the reference hitting times from a uniform random
// pair: enumerate all 4^n ordered pairs directly.
double brute_dcfht_leadingones(int n) {
    double acc = 0.0;
    const std::uint64_t count = 1ULL << n;
    for (std::uint64_t c1 = 0; c1 < count; ++c1)
        for (std::uint64_t c2 = 0; c2 < count; ++c2)
            acc += cfht_strict_opo_leadingones(n, n - std::max(lo_of_code(c1, n), lo_of_code(c2, n)));
    return acc / std::exp2(2.0 * n);
}

double brute_dcfht_onemax(int n) {
    double acc = 0.0;
    const std::uint64_t count = 1ULL << n;
    for (std::uint64_t c1 = 0; c1 < count; ++c1)
        for (std::uint64_t c2 = 0; c2 < count; ++c2)
            acc += cfht_opo_onemax(n, n - std::max(ones_of_code(c1), ones_of_code(c2)));
    return acc / std::exp2(2.0 * n);
}

}  // namespace

TEST_CASE("reference rule hitting times") {
    CHECK(cfht_strict_opo_leadingones(10, 3) == doctest::Approx(30.0));
    CHECK(cfht_strict_opo_leadingones(7, 0) == 0.0);
    CHECK(cfht_opo_onemax(10, 2) == doctest::Approx(15.0));
    CHECK(cfht_opo_onemax(5, 0) == 0.0);
    CHECK(cfht_opo_onemax(3, 3) == doctest::Approx(3.0 * (1.0 + 0.5 + 1.0 / 3.0)));
    CHECK_THROWS_AS(cfht_strict_opo_leadingones(5, 6), std::out_of_range);
    CHECK_THROWS_AS(cfht_opo_onemax(5, -1), std::out_of_range);
}

TEST_CASE("closed-form uniform-start hitting times") {
    CHECK(ref_dcfht_leadingones(1) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(ref_dcfht_leadingones(2) == doctest::Approx(1.625).epsilon(1e-12));
    CHECK(ref_dcfht_onemax(1) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(ref_dcfht_onemax(2) == doctest::Approx(1.1875).epsilon(1e-12));

    for (int n = 1; n <= 6; ++n) {
        CHECK(std::abs(ref_dcfht_leadingones(n) - brute_dcfht_leadingones(n)) <= 1e-9);
        CHECK(std::abs(ref_dcfht_onemax(n) - brute_dcfht_onemax(n)) <= 1e-9);
    }

    // two-route evaluation through the level masses of the projected start
    for (int n : {10, 40, 60}) {
        double route2 = 0.0;
        for (int j = 1; j <= n; ++j) {
            const double upper = 1.0 - std::exp2(static_cast<double>(j - 1 - n));
            const double lower = 1.0 - std::exp2(static_cast<double>(j - n));
            route2 += (upper * upper - lower * lower) * n * j;
        }
        CHECK(std::abs(ref_dcfht_leadingones(n) - route2) <= 1e-9);
    }

    // leading term is n^2
    const double r40 = ref_dcfht_leadingones(40) / (40.0 * 40.0);
    CHECK(r40 > 0.94);
    CHECK(r40 < 1.0);

    for (int n = 1; n <= 40; ++n) CHECK(ref_dcfht_onemax(n + 1) > ref_dcfht_onemax(n));
}

TEST_CASE("pairwise hitting-time tables") {
    const CfhtTable lo2 = cfht_table(Problem::LeadingOnes, 2);
    CHECK(lo2.at(1, 1) == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
    CHECK(lo2.at(1, 2) == doctest::Approx(16.0 / 9.0).epsilon(1e-12));
    CHECK(lo2.at(0, 2) == 0.0);

    const CfhtTable om2 = cfht_table(Problem::OneMax, 2);
    CHECK(om2.at(1, 2) == doctest::Approx(5.0 / 3.0).epsilon(1e-12));
    CHECK(om2.at(1, 2) - om2.at(1, 1) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    // first off-diagonal increments match their closed forms for larger n
    for (int n : {5, 9, 17}) {
        const double dn = n;
        const CfhtTable lo = cfht_table(Problem::LeadingOnes, n);
        CHECK(lo.at(1, 1) == doctest::Approx(dn * dn / (2 * dn - 1)).epsilon(1e-12));
        CHECK(lo.at(1, 2) - lo.at(1, 1) ==
              doctest::Approx(dn * dn * (dn - 1) / ((2 * dn - 1) * (2 * dn - 1))).epsilon(1e-12));
        const CfhtTable om = cfht_table(Problem::OneMax, n);
        CHECK(om.at(1, 2) - om.at(1, 1) ==
              doctest::Approx(dn * dn * (dn - 1) / ((2 * dn - 1) * (3 * dn - 2))).epsilon(1e-12));
    }

    for (int n : {2, 7, 50, 200}) {
        for (Problem p : {Problem::LeadingOnes, Problem::OneMax}) {
            const CfhtTable t = cfht_table(p, n);
            CHECK(cfht_table_residual(t) <= 1e-10);
            for (int i = 0; i <= n; ++i) {
                CHECK(t.at(i, 0) == 0.0);
                CHECK(t.at(0, i) == 0.0);
                for (int j = 0; j <= n; ++j) {
                    CHECK(t.at(i, j) == t.at(j, i));
                    CHECK(t.at(i, j) >= 0.0);
                    CHECK(std::isfinite(t.at(i, j)));
                }
            }
        }
    }
}

TEST_CASE("table inequalities hold") {
    CHECK(check_cfht_inequalities(Problem::LeadingOnes, 2).empty());
    CHECK(check_cfht_inequalities(Problem::OneMax, 50).empty());

    const CfhtTable lo10 = cfht_table(Problem::LeadingOnes, 10);
    const double inc = lo10.at(1, 2) - lo10.at(1, 1);
    CHECK(inc >= 10.0 / 8.0);
    CHECK(inc < 10.0 / 2.0);
}

TEST_CASE("the unrestricted forms of two stated bounds are genuinely false") {
    // these pin why check_cfht_inequalities restricts its scan domains
    const CfhtTable om50 = cfht_table(Problem::OneMax, 50);
    CHECK(om50.at(1, 7) - om50.at(1, 6) < 1.0);  // "> 1" fails at i=1, delta=6

    const CfhtTable lo2 = cfht_table(Problem::LeadingOnes, 2);
    CHECK(lo2.at(1, 2) - lo2.at(0, 2) == doctest::Approx(16.0 / 9.0));
    CHECK(lo2.at(1, 2) - lo2.at(0, 2) > 2.0 - 5.0 / 16.0);  // step bound fails at n=2
}

TEST_CASE("per-position pair marginals") {
    for (int n : {2, 3, 9}) {
        for (double pc : {0.0, 0.3, 1.0}) {
            const PairMarginals m = pair_marginals(n, pc, 0);
            CHECK(m.p00 == doctest::Approx(0.25).epsilon(1e-14));
            CHECK(m.p01 == doctest::Approx(0.25).epsilon(1e-14));
        }
    }
    CHECK(pair_marginals(2, 0.0, 1).p00 == doctest::Approx(1.0 / 16.0).epsilon(1e-14));
    CHECK(pair_marginals(3, 0.4, 2).p01 == doctest::Approx(7.0 / 45.0).epsilon(1e-14));

    // continuity across the removable singularity
    for (int n : {3, 11}) {
        const double special = (n - 1.0) / (2.0 * n - 1.0);
        for (long t : {1L, 5L, 30L}) {
            const double at_special = pair_marginals(n, special, t).p01;
            CHECK(std::abs(pair_marginals(n, special + 1e-9, t).p01 - at_special) <= 1e-6);
            CHECK(std::abs(pair_marginals(n, special - 1e-9, t).p01 - at_special) <= 1e-6);
        }
    }

    // pc = 1: swaps at the pair position destroy (0,1) at rate 1/n and
    // never touch (0,0)
    for (long t : {0L, 3L, 17L}) {
        const PairMarginals m = pair_marginals(4, 1.0, t);
        CHECK(m.p00 == doctest::Approx(0.25).epsilon(1e-14));
        CHECK(m.p01 == doctest::Approx(0.25 * std::pow(0.75, static_cast<double>(t))).epsilon(1e-12));
    }
}

TEST_CASE("distribution bounds") {
    CHECK(equal_lo_lower_bound(1, 0.0, 0) == doctest::Approx(0.25).epsilon(1e-14));
    for (long t : {0L, 4L, 50L})
        CHECK(equal_lo_lower_bound(6, 1.0, t) ==
              doctest::Approx(1.0 / 3.0 - 1.0 / (3.0 * std::exp2(12.0))).epsilon(1e-14));

    CHECK(n01_fraction_upper_bound(3, 0.5, 0) == doctest::Approx(-0.5).epsilon(1e-14));
    for (long t : {1L, 9L}) {
        const double expect = -0.25 - 0.25 * std::pow(1.0 - 1.0 / 5.0, static_cast<double>(t));
        CHECK(n01_fraction_upper_bound(5, 1.0, t) == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("theorem bound values") {
    const double e = std::numbers::e;
    CHECK(*theorem_bound(TheoremId::T2, 1, 0.0).upper == doctest::Approx(e * 0.25).epsilon(1e-12));
    CHECK(*theorem_bound(TheoremId::T4, 2, 0.5).lower == doctest::Approx(13.0 / 24.0).epsilon(1e-12));
    CHECK(*theorem_bound(TheoremId::T6, 2, 0.5).lower == doctest::Approx(13.0 / 24.0).epsilon(1e-12));
    const double t7 = 100.0 / 19.0 * (1.0 / 3.0 - 1.0 / (3.0 * std::exp2(20.0)));
    CHECK(*theorem_bound(TheoremId::T7Gap, 10, 0.5).lower == doctest::Approx(t7).epsilon(1e-12));
    CHECK(*theorem_bound(TheoremId::T7Ratio, 10, 0.5).upper == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(*theorem_bound(TheoremId::T8Gap, 10, 0.5).lower == doctest::Approx(5.0).epsilon(1e-12));

    CHECK_THROWS_AS(theorem_bound(TheoremId::T2, 4, 1.0), std::domain_error);
    CHECK_THROWS_AS(theorem_bound(TheoremId::T7Ratio, 4, 1.0), std::domain_error);

    for (int n = 1; n <= 60; ++n)
        for (double pc : {0.0, 0.1, 0.5, 0.9})
            CHECK(*theorem_bound(TheoremId::T3, n, pc).lower <= *theorem_bound(TheoremId::T2, n, pc).upper);
}
