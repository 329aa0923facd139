#pragma once

#include <string>
#include <vector>

#include "ealab/chain.hpp"

namespace ealab {

struct AuditDiscrepancy {
    std::string what;
    std::size_t state = 0;
    double expected = 0.0;
    double actual = 0.0;
};

// Compares every constructed transition row of the (2:2) chain with
// one-bit mutation (and optionally one-bit crossover) against the
// analytically derived row, including the case split on the worse
// solution's bit at the better solution's first-zero position. Also checks
// the evolved distribution's conditional-uniformity structure for
// t = 0..horizon from a uniform start (see audit.cpp for the exact
// statements checked per crossover probability).
std::vector<AuditDiscrepancy> transition_audit(const EaConfig& config, int n, long uniformity_horizon = 20);

}  // namespace ealab
