#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "ealab/chain.hpp"

namespace ealab {

// One time step of the switching comparison. lhs moves one step with the
// audited chain and prices the landing state with the reference hitting
// times; rhs moves the projected distribution one step with the reference
// chain itself. rho = lhs - rhs.
struct GmcstStep {
    long t = 0;
    double lhs = 0.0;
    double rhs = 0.0;
    double rho = 0.0;
    double unabsorbed = 0.0;
};

enum class GmcstSide { LessEqual, GreaterEqual };

struct GmcstReport {
    std::vector<GmcstStep> steps;
    double rho_sum = 0.0;
    double rho_positive_sum = 0.0;
    double rho_negative_sum = 0.0;
    long horizon_used = 0;
    double residual_mass = 0.0;  // non-absorbed mass at the stop step
    bool truncated = false;      // horizon reached before tail_eps
    double efht_audited = 0.0;   // E[tau | pi_0], exactly solved
    double efht_reference = 0.0;  // E[tau' | pi'_0], exactly solved
    double truncation_bound = 0.0;
    bool le_ok = false;  // E[tau] <= E[tau'] + sum max(rho,0) + bound
    bool ge_ok = false;  // E[tau] >= E[tau'] + sum min(rho,0) - bound
    std::optional<bool> analytic_ok;
    long analytic_violations = 0;
};

// rho supplied analytically as a function of (t, non-absorbed mass of the
// audited chain at t).
using AnalyticRho = std::function<double(long t, double unabsorbed)>;

// phi maps audited-state indices to reference-state indices and must
// preserve optimality both ways (else MappingInvalid). States of the
// reference space outside phi's image simply receive zero mass.
GmcstReport gmcst_check(const TransitionMatrix& audited, const TransitionMatrix& reference,
                        const std::vector<std::uint32_t>& phi, std::vector<double> pi0, long horizon,
                        double tail_eps, const AnalyticRho* analytic = nullptr,
                        GmcstSide analytic_side = GmcstSide::LessEqual);

// Index-level phi built from phi_map for 2-solution -> 1-solution setups.
std::vector<std::uint32_t> phi_indices(Problem problem, const StateSpace& audited_space);

}  // namespace ealab
