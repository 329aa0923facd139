#pragma once

#include <string>
#include <vector>

#include "ealab/audit.hpp"
#include "ealab/chain.hpp"
#include "ealab/exact.hpp"
#include "ealab/gmcst.hpp"

namespace ealab {

struct CheckResult {
    std::string name;
    bool pass = false;
    // True for comparisons reported for information that do not gate the
    // CLI exit status (see the note on the fraction bound in checks.cpp).
    bool informational = false;
    std::string detail;
};

// Adjacent-entry inequalities of the E(i,j) tables for n in 2..n_max, the
// per-position pair marginals against exact chain evolution at n = 3, the
// equal-prefix mass lower bound at n in {3,4}, and the N(0,1) fraction
// upper bound comparison at n in {3,4}.
std::vector<CheckResult> check_props(int n_max);

// Exact (2+2) hitting times against the T2..T6 brackets for
// n in 2..n_max, pc in {0, 0.5}, both crossover kinds and both mutations.
std::vector<CheckResult> check_bounds(int n_max);

// Numerical switching-theorem verification for theorem in {2,3,4,5,6}.
std::vector<CheckResult> check_gmcst(int theorem, int n, double pc, double tail_eps = 1e-12,
                                     long horizon = 200000);

std::vector<CheckResult> check_audit(Problem problem, int n, double pc);

bool all_pass(const std::vector<CheckResult>& results, bool include_informational = false);

}  // namespace ealab
