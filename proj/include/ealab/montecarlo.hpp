#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ealab/ea.hpp"

namespace ealab {

struct EfhtEstimate {
    double mean = 0.0;
    double stderr_mean = 0.0;
    std::uint64_t runs = 0;
    std::uint64_t censored = 0;
    std::uint64_t cutoff = 0;
    std::string fingerprint;
    std::uint64_t master_seed = 0;
    bool degenerate = false;  // runs == 1, no spread information
};

struct McOptions {
    std::uint64_t cutoff = 0;  // 0 -> 1000 * n^2
    int threads = 0;           // 0 -> EA_LAB_THREADS env, else hardware
};

std::uint64_t default_cutoff(int n);

// Mean/stderr over `runs` independent trials with per-trial seeds derived
// from (master_seed, trial index). Censored trials contribute the cutoff.
// Accumulation is blocked and reduced in fixed block order, so the result
// is bit-identical for any worker count.
EfhtEstimate estimate_efht(const EaConfig& config, int n, std::uint64_t runs, std::uint64_t master_seed,
                           McOptions options = {});

// (cross - mut) * (1/n) * (1-pc)/pc; pc must lie strictly in (0,1).
double gap_statistic(double efht_cross, double efht_mut, int n, double pc);

// cross/mut * (1-pc); mut must be nonzero.
double ratio_statistic(double efht_cross, double efht_mut, double pc);

struct SweepRecord {
    EaConfig config;
    int n = 0;
    std::string pc_or_strategy;  // "0.5", "mr2", or "mut" for the baseline
    EfhtEstimate estimate;
    std::optional<double> gap;
    std::optional<double> ratio;
};

// One estimate per grid point plus gap/ratio columns against the
// mutation-only baseline at the same n. Every point's seed is derived from
// (master_seed, n, point identity), so any subset re-runs identically.
std::vector<SweepRecord> sweep(const EaConfig& base, const std::vector<int>& ns, const std::vector<double>& pcs,
                               const std::vector<Strategy>& strategies, std::uint64_t runs,
                               std::uint64_t master_seed, McOptions options = {});

std::uint64_t sweep_point_seed(std::uint64_t master_seed, int n, std::uint64_t point_tag);

}  // namespace ealab
