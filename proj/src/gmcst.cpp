#include "ealab/gmcst.hpp"

#include <algorithm>
#include <cmath>

namespace ealab {

std::vector<std::uint32_t> phi_indices(Problem problem, const StateSpace& audited_space) {
    if (audited_space.arity != 2) throw MappingInvalid("projection is defined on 2-solution spaces");
    std::vector<std::uint32_t> phi(audited_space.size());
    for (std::size_t idx = 0; idx < audited_space.size(); ++idx)
        phi[idx] = static_cast<std::uint32_t>(
            phi_map(problem, audited_space.n, audited_space.code1(idx), audited_space.code2(idx)));
    return phi;
}

GmcstReport gmcst_check(const TransitionMatrix& audited, const TransitionMatrix& reference,
                        const std::vector<std::uint32_t>& phi, std::vector<double> pi0, long horizon,
                        double tail_eps, const AnalyticRho* analytic, GmcstSide analytic_side) {
    const std::size_t a_states = audited.states();
    const std::size_t b_states = reference.states();
    if (phi.size() != a_states) throw MappingInvalid("phi size mismatch");
    if (pi0.size() != a_states) throw std::invalid_argument("pi0 size mismatch");
    for (std::size_t x = 0; x < a_states; ++x) {
        if (phi[x] >= b_states) throw MappingInvalid("phi image out of range");
        if (audited.space.is_optimal(x) != reference.space.is_optimal(phi[x]))
            throw MappingInvalid("phi must preserve optimality at state " + std::to_string(x));
    }

    const std::vector<double> h_a = cfht_solve(audited);
    const std::vector<double> h_b = cfht_solve(reference);
    const double max_h_a = *std::max_element(h_a.begin(), h_a.end());
    const double max_h_b = *std::max_element(h_b.begin(), h_b.end());
    const double tol = 1e-9 * std::max(1.0, max_h_b);

    // Per-state one-step prices; both are constant in t.
    std::vector<double> priced_a(a_states, 0.0);
    for (std::size_t x = 0; x < a_states; ++x)
        for (std::size_t k = audited.row_ptr[x]; k < audited.row_ptr[x + 1]; ++k)
            priced_a[x] += audited.val[k] * h_b[phi[audited.col[k]]];
    std::vector<double> priced_b(b_states, 0.0);
    for (std::size_t y = 0; y < b_states; ++y)
        for (std::size_t k = reference.row_ptr[y]; k < reference.row_ptr[y + 1]; ++k)
            priced_b[y] += reference.val[k] * h_b[reference.col[k]];

    GmcstReport report;
    report.efht_audited = 0.0;
    report.efht_reference = 0.0;
    for (std::size_t x = 0; x < a_states; ++x) {
        report.efht_audited += pi0[x] * h_a[x];
        report.efht_reference += pi0[x] * h_b[phi[x]];
    }

    std::vector<double> pi = std::move(pi0);
    long t = 0;
    bool analytic_all_ok = true;
    for (;; ++t) {
        const double unabsorbed = 1.0 - optimal_mass(audited, pi);
        if (unabsorbed < tail_eps) {
            report.residual_mass = unabsorbed;
            break;
        }
        if (t >= horizon) {
            report.truncated = true;
            report.residual_mass = unabsorbed;
            break;
        }
        double lhs = 0.0, rhs = 0.0;
        for (std::size_t x = 0; x < a_states; ++x) {
            if (pi[x] == 0.0) continue;
            lhs += pi[x] * priced_a[x];
            rhs += pi[x] * priced_b[phi[x]];
        }
        const double rho = lhs - rhs;
        report.steps.push_back({t, lhs, rhs, rho, unabsorbed});
        report.rho_sum += rho;
        report.rho_positive_sum += std::max(rho, 0.0);
        report.rho_negative_sum += std::min(rho, 0.0);
        if (analytic) {
            const double bound = (*analytic)(t, unabsorbed);
            const bool ok = analytic_side == GmcstSide::LessEqual ? lhs <= rhs + bound + tol
                                                                  : lhs >= rhs + bound - tol;
            if (!ok) {
                analytic_all_ok = false;
                ++report.analytic_violations;
            }
        }
        pi = evolve(audited, std::move(pi), 1);
    }
    report.horizon_used = t;
    if (analytic) report.analytic_ok = analytic_all_ok;
    report.truncation_bound = report.residual_mass * (max_h_a + max_h_b);
    report.le_ok =
        report.efht_audited <= report.efht_reference + report.rho_positive_sum + report.truncation_bound + tol;
    report.ge_ok =
        report.efht_audited >= report.efht_reference + report.rho_negative_sum - report.truncation_bound - tol;
    return report;
}

}  // namespace ealab
