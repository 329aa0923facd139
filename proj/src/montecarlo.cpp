#include "ealab/montecarlo.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "ealab/names.hpp"

namespace ealab {

std::uint64_t default_cutoff(int n) {
    return 1000ULL * static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n);
}

namespace {

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("EA_LAB_THREADS")) {
        const int parsed = std::atoi(env);
        if (parsed > 0) return parsed;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

struct BlockSums {
    double steps = 0.0;
    double steps_sq = 0.0;
    std::uint64_t censored = 0;
};

constexpr std::uint64_t kBlock = 1024;

}  // namespace

EfhtEstimate estimate_efht(const EaConfig& config, int n, std::uint64_t runs, std::uint64_t master_seed,
                           McOptions options) {
    config.validate();
    if (runs < 1) throw InvalidConfig("runs must be >= 1");
    const std::uint64_t cutoff = options.cutoff == 0 ? default_cutoff(n) : options.cutoff;
    const std::uint64_t blocks = (runs + kBlock - 1) / kBlock;
    std::vector<BlockSums> sums(blocks);

    auto run_block = [&](std::uint64_t b) {
        BlockSums acc;
        const std::uint64_t lo = b * kBlock;
        const std::uint64_t hi = std::min(runs, lo + kBlock);
        for (std::uint64_t i = lo; i < hi; ++i) {
            const TrialResult r = run_trial(config, n, Rng::derive_seed(master_seed, i), cutoff);
            const double steps = static_cast<double>(r.steps);
            acc.steps += steps;
            acc.steps_sq += steps * steps;
            acc.censored += r.censored ? 1 : 0;
        }
        sums[b] = acc;
    };

    const int threads = std::min<std::uint64_t>(resolve_threads(options.threads), blocks);
    if (threads <= 1) {
        for (std::uint64_t b = 0; b < blocks; ++b) run_block(b);
    } else {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int w = 0; w < threads; ++w)
            pool.emplace_back([&] {
                for (std::uint64_t b = next.fetch_add(1); b < blocks; b = next.fetch_add(1)) run_block(b);
            });
        for (auto& t : pool) t.join();
    }

    double total = 0.0, total_sq = 0.0;
    std::uint64_t censored = 0;
    for (const BlockSums& b : sums) {
        total += b.steps;
        total_sq += b.steps_sq;
        censored += b.censored;
    }

    EfhtEstimate est;
    est.runs = runs;
    est.censored = censored;
    est.cutoff = cutoff;
    est.master_seed = master_seed;
    est.fingerprint = config.fingerprint() + ":n=" + std::to_string(n);
    est.mean = total / static_cast<double>(runs);
    if (runs > 1) {
        const double var = (total_sq - static_cast<double>(runs) * est.mean * est.mean) /
                           static_cast<double>(runs - 1);
        est.stderr_mean = std::sqrt(std::max(var, 0.0) / static_cast<double>(runs));
    } else {
        est.degenerate = true;
    }
    return est;
}

double gap_statistic(double efht_cross, double efht_mut, int n, double pc) {
    if (n < 1) throw std::domain_error("n must be >= 1");
    if (pc <= 0.0 || pc >= 1.0) throw std::domain_error("gap statistic needs pc in (0,1)");
    return (efht_cross - efht_mut) / static_cast<double>(n) * (1.0 - pc) / pc;
}

double ratio_statistic(double efht_cross, double efht_mut, double pc) {
    if (efht_mut == 0.0) throw std::domain_error("ratio statistic needs a nonzero baseline");
    return efht_cross / efht_mut * (1.0 - pc);
}

std::uint64_t sweep_point_seed(std::uint64_t master_seed, int n, std::uint64_t point_tag) {
    return Rng::derive_seed(Rng::derive_seed(master_seed, static_cast<std::uint64_t>(n)), point_tag);
}

std::vector<SweepRecord> sweep(const EaConfig& base, const std::vector<int>& ns, const std::vector<double>& pcs,
                               const std::vector<Strategy>& strategies, std::uint64_t runs,
                               std::uint64_t master_seed, McOptions options) {
    base.validate();
    if (ns.empty()) throw InvalidConfig("empty n grid");
    std::vector<SweepRecord> records;
    for (int n : ns) {
        EaConfig mut = base;
        mut.crossover.reset();
        mut.pc = 0.0;
        mut.strategy.reset();
        SweepRecord baseline;
        baseline.config = mut;
        baseline.n = n;
        baseline.pc_or_strategy = "mut";
        baseline.estimate = estimate_efht(mut, n, runs, sweep_point_seed(master_seed, n, 0), options);
        records.push_back(baseline);
        const double mut_mean = baseline.estimate.mean;

        for (double pc : pcs) {
            if (!base.crossover) throw InvalidConfig("pc grid requires a crossover kind on the base config");
            EaConfig cfg = base;
            cfg.pc = pc;
            cfg.strategy.reset();
            SweepRecord rec;
            rec.config = cfg;
            rec.n = n;
            rec.pc_or_strategy = std::to_string(pc);
            rec.estimate =
                estimate_efht(cfg, n, runs, sweep_point_seed(master_seed, n, 1 + std::bit_cast<std::uint64_t>(pc)),
                              options);
            if (pc > 0.0 && pc < 1.0) rec.gap = gap_statistic(rec.estimate.mean, mut_mean, n, pc);
            if (mut_mean > 0.0) rec.ratio = ratio_statistic(rec.estimate.mean, mut_mean, pc);
            records.push_back(rec);
        }
        for (Strategy s : strategies) {
            EaConfig cfg = EaConfig::with_strategy(base.problem, s, base.tie);
            SweepRecord rec;
            rec.config = cfg;
            rec.n = n;
            rec.pc_or_strategy = to_string(s);
            rec.estimate = estimate_efht(cfg, n, runs,
                                         sweep_point_seed(master_seed, n, 0x5740000ULL + static_cast<int>(s)),
                                         options);
            if (mut_mean > 0.0) rec.ratio = ratio_statistic(rec.estimate.mean, mut_mean, 0.0);
            records.push_back(rec);
        }
    }
    return records;
}

}  // namespace ealab
