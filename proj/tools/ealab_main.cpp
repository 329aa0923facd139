#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "ealab/checks.hpp"
#include "ealab/montecarlo.hpp"
#include "ealab/names.hpp"
#include "ealab/records.hpp"
#include "ealab/svg.hpp"

namespace {

using namespace ealab;

constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitSizeLimit = 3;
constexpr int kExitCensored = 4;

struct ConfigFlags {
    std::string algo = "2c2";
    std::string problem = "leadingones";
    std::string mutation = "onebit";
    std::string crossover;
    std::string strategy;
    std::string tie = "keepparent";
    double pc = 0.0;
};

void add_config_flags(CLI::App* app, ConfigFlags& f, bool with_reproduction = true) {
    app->add_option("--algo", f.algo, "algorithm: 1p1, 1p1s, 2c2, 2p2")->capture_default_str();
    app->add_option("--problem", f.problem, "problem: leadingones, onemax")->capture_default_str();
    app->add_option("--mutation", f.mutation, "mutation: onebit, bitwise")->capture_default_str();
    app->add_option("--crossover", f.crossover,
                    "crossover: onepoint, uniform, onebit, onediffbit, firstdiffbit, firstdiffpoint");
    app->add_option("--tie", f.tie, "tie policy: keepparent, preferoffspring")->capture_default_str();
    if (with_reproduction) {
        app->add_option("--strategy", f.strategy, "conditional rule: mr1a, mr1b, mr1, mr2, mr3");
        app->add_option("--pc", f.pc, "crossover probability")->capture_default_str();
    }
}

EaConfig make_config(const ConfigFlags& f) {
    EaConfig c;
    c.algorithm = parse_algorithm(f.algo);
    c.problem = parse_problem(f.problem);
    c.mutation = parse_mutation(f.mutation);
    c.tie = parse_tie_policy(f.tie);
    if (!f.strategy.empty()) {
        c.strategy = parse_strategy(f.strategy);
    } else if (!f.crossover.empty()) {
        c.crossover = parse_crossover(f.crossover);
        c.pc = f.pc;
    }
    c.validate();
    return c;
}

std::vector<int> parse_n_grid(const std::string& spec) {
    std::vector<int> out;
    if (spec.find(':') != std::string::npos) {
        int a = 0, b = 0, step = 1;
        char c1 = 0, c2 = 0;
        std::istringstream is(spec);
        if (!(is >> a >> c1 >> b) || c1 != ':') throw CLI::ValidationError("--n", "expected a:b[:step]");
        if (is >> c2 >> step) {
            if (c2 != ':' || step < 1) throw CLI::ValidationError("--n", "expected a:b:step with step >= 1");
        }
        for (int n = a; n <= b; n += step) out.push_back(n);
    } else {
        std::istringstream is(spec);
        std::string tok;
        while (std::getline(is, tok, ',')) out.push_back(std::stoi(tok));
    }
    if (out.empty()) throw CLI::ValidationError("--n", "empty grid");
    return out;
}

std::vector<double> parse_pc_grid(const std::string& spec) {
    std::vector<double> out;
    std::istringstream is(spec);
    std::string tok;
    while (std::getline(is, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

void emit_records(const std::vector<ExperimentRecord>& records, const std::string& out_path, bool json,
                  bool with_timestamp) {
    std::ostringstream body;
    if (json)
        body << to_json(records, with_timestamp) << '\n';
    else
        write_csv(body, records, with_timestamp);
    if (out_path.empty() || out_path == "-") {
        std::cout << body.str();
        return;
    }
    if (std::filesystem::exists(out_path)) throw std::runtime_error("refusing to overwrite " + out_path);
    std::ofstream os(out_path);
    if (!os) throw std::runtime_error("cannot open " + out_path);
    os << body.str();
}

ExperimentRecord record_from_estimate(const std::string& experiment, const EaConfig& config, int n,
                                      const std::string& pc_or_strategy, const EfhtEstimate& est,
                                      bool with_timestamp) {
    ExperimentRecord r;
    r.experiment = experiment;
    r.problem = to_string(config.problem);
    r.algo = to_string(config.algorithm);
    r.n = n;
    r.pc_or_strategy = pc_or_strategy;
    r.value = est.mean;
    r.stderr_value = est.stderr_mean;
    r.runs = est.runs;
    r.censored = est.censored;
    r.seed = est.master_seed;
    if (with_timestamp) r.timestamp = utc_timestamp();
    return r;
}

std::string pc_label(double pc) {
    std::ostringstream os;
    os << pc;
    return os.str();
}

struct FigurePoint {
    int n;
    EfhtEstimate mut;
    EfhtEstimate cross;
};

int run_figures(const std::string& figure, const std::vector<int>& ns, const std::vector<double>& pcs,
                std::uint64_t runs, std::uint64_t seed, const std::string& outdir, bool with_timestamp,
                int threads) {
    std::filesystem::create_directories(outdir);
    McOptions opts;
    opts.threads = threads;
    std::vector<ExperimentRecord> records;
    std::vector<svg::Series> series;
    bool log_y = figure == "efht" || figure == "mr";
    std::string y_label = figure == "efht" || figure == "mr" ? "estimated hitting time" : figure;

    auto ensure_uncensored = [](const EfhtEstimate& est, const std::string& what) {
        if (est.censored > 0)
            throw std::runtime_error("censored runs in " + what + "; figures refuse censored estimates");
    };

    for (Problem problem : {Problem::LeadingOnes, Problem::OneMax}) {
        const std::string ptag = to_string(problem);
        if (figure == "mr") {
            std::vector<Strategy> strategies =
                problem == Problem::LeadingOnes
                    ? std::vector<Strategy>{Strategy::MR1a, Strategy::MR1b, Strategy::MR1, Strategy::MR2}
                    : std::vector<Strategy>{Strategy::MR3};
            std::map<std::string, svg::Series> by_label;
            for (int n : ns) {
                const EaConfig mut = EaConfig::mutation_only(Algorithm::TwoColonTwo, problem, MutationKind::OneBit);
                const EfhtEstimate base = estimate_efht(mut, n, runs, sweep_point_seed(seed, n, 0), opts);
                ensure_uncensored(base, "mutation-only n=" + std::to_string(n));
                records.push_back(record_from_estimate("mr", mut, n, "mut", base, with_timestamp));
                by_label[ptag + ":mut"].points.emplace_back(n, base.mean);
                for (Strategy s : strategies) {
                    const EaConfig cfg = EaConfig::with_strategy(problem, s);
                    const EfhtEstimate est =
                        estimate_efht(cfg, n, runs, sweep_point_seed(seed, n, 0x5740000ULL + static_cast<int>(s)),
                                      opts);
                    ensure_uncensored(est, to_string(s));
                    records.push_back(record_from_estimate("mr", cfg, n, to_string(s), est, with_timestamp));
                    by_label[ptag + ":" + to_string(s)].points.emplace_back(n, est.mean);
                }
            }
            for (auto& [label, ser] : by_label) {
                ser.label = label;
                series.push_back(ser);
            }
            continue;
        }

        std::map<std::string, svg::Series> by_label;
        for (int n : ns) {
            const EaConfig mut = EaConfig::mutation_only(Algorithm::TwoColonTwo, problem, MutationKind::OneBit);
            const EfhtEstimate base = estimate_efht(mut, n, runs, sweep_point_seed(seed, n, 0), opts);
            ensure_uncensored(base, "mutation-only n=" + std::to_string(n));
            if (figure == "efht") {
                records.push_back(record_from_estimate("efht", mut, n, "mut", base, with_timestamp));
                by_label[ptag + ":mut"].points.emplace_back(n, base.mean);
            }
            for (double pc : pcs) {
                if (pc <= 0.0) continue;
                const EaConfig cfg = EaConfig::with_crossover(Algorithm::TwoColonTwo, problem, MutationKind::OneBit,
                                                              CrossoverKind::OneBitX, pc);
                const EfhtEstimate est =
                    estimate_efht(cfg, n, runs,
                                  sweep_point_seed(seed, n, 1 + std::bit_cast<std::uint64_t>(pc)), opts);
                ensure_uncensored(est, "pc=" + pc_label(pc));
                const double se_comb = std::sqrt(est.stderr_mean * est.stderr_mean +
                                                 base.stderr_mean * base.stderr_mean);
                if (figure == "efht") {
                    records.push_back(record_from_estimate("efht", cfg, n, pc_label(pc), est, with_timestamp));
                    by_label[ptag + ":pc=" + pc_label(pc)].points.emplace_back(n, est.mean);
                } else if (figure == "gap") {
                    ExperimentRecord r = record_from_estimate("gap", cfg, n, pc_label(pc), est, with_timestamp);
                    r.value = gap_statistic(est.mean, base.mean, n, pc);
                    r.stderr_value = se_comb / n * (1.0 - pc) / pc;
                    const double increment =
                        problem == Problem::LeadingOnes ? *theorem_bound(TheoremId::T7Gap, n, pc).lower
                                                        : *theorem_bound(TheoremId::T8Gap, n, pc).lower;
                    r.bound = increment * (1.0 - pc) / (pc * n);
                    records.push_back(r);
                    by_label[ptag + ":pc=" + pc_label(pc)].points.emplace_back(n, r.value);
                } else if (figure == "ratio") {
                    ExperimentRecord r = record_from_estimate("ratio", cfg, n, pc_label(pc), est, with_timestamp);
                    r.value = ratio_statistic(est.mean, base.mean, pc);
                    r.stderr_value = (1.0 - pc) *
                                     std::sqrt(std::pow(est.stderr_mean / base.mean, 2) +
                                               std::pow(est.mean * base.stderr_mean / (base.mean * base.mean), 2));
                    r.bound = 1.0;
                    records.push_back(r);
                    by_label[ptag + ":pc=" + pc_label(pc)].points.emplace_back(n, r.value);
                }
            }
        }
        for (auto& [label, ser] : by_label) {
            ser.label = label;
            series.push_back(ser);
        }
    }

    if (figure == "ratio" || figure == "gap") log_y = false;
    const std::string csv_path = outdir + "/" + figure + ".csv";
    if (std::filesystem::exists(csv_path)) throw std::runtime_error("refusing to overwrite " + csv_path);
    std::ofstream os(csv_path);
    write_csv(os, records, with_timestamp);
    svg::write_line_chart(outdir + "/" + figure + ".svg", figure, "n", y_label, series, log_y);
    std::cout << "wrote " << csv_path << " and " << outdir << "/" << figure << ".svg\n";
    return 0;
}

// Flat key=value config support: `--config FILE` anywhere on the command
// line expands to `--key value` pairs for every key not already given as a
// flag, so explicit flags always override file values.
std::vector<std::string> expand_config_args(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    std::string config_path;
    for (std::size_t i = 1; i + 1 < args.size(); ++i) {
        if (args[i] == "--config") {
            config_path = args[i + 1];
            args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
            break;
        }
    }
    if (config_path.empty()) return args;
    std::ifstream is(config_path);
    if (!is) throw std::runtime_error("cannot open config file " + config_path);
    std::string line;
    while (std::getline(is, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) continue;
        const std::string flag = "--" + key;
        bool already = false;
        for (const auto& a : args)
            if (a == flag) already = true;
        if (!already) {
            args.push_back(flag);
            if (value != "true") args.push_back(value);
        }
    }
    return args;
}

int print_check_results(const std::vector<CheckResult>& results) {
    bool failed = false;
    for (const auto& r : results) {
        const char* tag = r.pass ? "[PASS]" : (r.informational ? "[NOTE]" : "[FAIL]");
        std::cout << tag << ' ' << r.name << ": " << r.detail << '\n';
        if (!r.pass && !r.informational) failed = true;
    }
    return failed ? kExitCheckFailed : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hitting-time laboratory for crossover-enabled evolutionary algorithms"};
    app.require_subcommand(1);

    ConfigFlags run_flags;
    int run_n = 10;
    std::uint64_t run_runs = 1000, run_seed = 0, run_cutoff = 0;
    bool run_exact = false, run_json = false, run_no_timestamp = false, run_strict = false;
    int run_threads = 0;
    std::string run_out;
    bool run_seed_given = false;
    auto* run_cmd = app.add_subcommand("run", "estimate or exactly solve one configuration");
    add_config_flags(run_cmd, run_flags);
    run_cmd->add_option("--n", run_n, "problem size")->required();
    run_cmd->add_option("--runs", run_runs, "trial count")->capture_default_str();
    run_cmd->add_option("--seed", run_seed, "master seed")->each([&](const std::string&) { run_seed_given = true; });
    run_cmd->add_option("--cutoff", run_cutoff, "step cutoff (0 = 1000 n^2)");
    run_cmd->add_flag("--exact", run_exact, "solve the exact chain instead of sampling");
    run_cmd->add_flag("--json", run_json, "emit JSON instead of CSV");
    run_cmd->add_flag("--no-timestamp", run_no_timestamp, "omit the timestamp column");
    run_cmd->add_flag("--strict", run_strict, "fail when any run is censored");
    run_cmd->add_option("--threads", run_threads, "worker threads (0 = EA_LAB_THREADS or hardware)");
    run_cmd->add_option("--out", run_out, "output path (default stdout)");

    ConfigFlags sweep_flags;
    std::string sweep_n = "10:60:10", sweep_pc, sweep_strategies, sweep_out;
    std::uint64_t sweep_runs = 1000, sweep_seed = 0, sweep_cutoff = 0;
    bool sweep_json = false, sweep_no_timestamp = false;
    int sweep_threads = 0;
    bool sweep_seed_given = false;
    auto* sweep_cmd = app.add_subcommand("sweep", "estimate a grid of configurations");
    add_config_flags(sweep_cmd, sweep_flags, /*with_reproduction=*/false);
    sweep_cmd->add_option("--n", sweep_n, "n grid: a:b:step or comma list")->capture_default_str();
    sweep_cmd->add_option("--pc", sweep_pc, "comma list of crossover probabilities");
    sweep_cmd->add_option("--strategies", sweep_strategies, "comma list of conditional rules");
    sweep_cmd->add_option("--runs", sweep_runs, "trials per grid point")->capture_default_str();
    sweep_cmd->add_option("--seed", sweep_seed, "master seed")->each([&](const std::string&) { sweep_seed_given = true; });
    sweep_cmd->add_option("--cutoff", sweep_cutoff, "step cutoff (0 = 1000 n^2)");
    sweep_cmd->add_flag("--json", sweep_json, "emit JSON instead of CSV");
    sweep_cmd->add_flag("--no-timestamp", sweep_no_timestamp, "omit the timestamp column");
    sweep_cmd->add_option("--threads", sweep_threads, "worker threads");
    sweep_cmd->add_option("--out", sweep_out, "output path (default stdout)");

    std::string fig_kind, fig_outdir = "figures";
    std::string fig_n = "10:100:10", fig_pc = "0,0.1,0.5,0.9";
    std::uint64_t fig_runs = 1000, fig_seed = 0;
    bool fig_no_timestamp = false;
    int fig_threads = 0;
    bool fig_seed_given = false;
    auto* fig_cmd = app.add_subcommand("figures", "reproduce the experiment figures (data + SVG)");
    fig_cmd->add_option("figure", fig_kind, "one of: efht, gap, ratio, mr")->required();
    fig_cmd->add_option("--n", fig_n, "n grid")->capture_default_str();
    fig_cmd->add_option("--pc", fig_pc, "crossover probability grid")->capture_default_str();
    fig_cmd->add_option("--runs", fig_runs, "trials per point")->capture_default_str();
    fig_cmd->add_option("--seed", fig_seed, "master seed")->each([&](const std::string&) { fig_seed_given = true; });
    fig_cmd->add_flag("--no-timestamp", fig_no_timestamp, "omit the timestamp column");
    fig_cmd->add_option("--threads", fig_threads, "worker threads");
    fig_cmd->add_option("--outdir", fig_outdir, "output directory")->capture_default_str();

    std::string check_suite;
    int check_nmax = 100, check_bounds_nmax = 4, check_n = 3, check_theorem = 0;
    double check_pc = 0.5;
    std::string check_problem;
    auto* check_cmd = app.add_subcommand("check", "run a verification suite");
    check_cmd->add_option("suite", check_suite, "one of: props, bounds, gmcst, audit")->required();
    check_cmd->add_option("--n-max", check_nmax, "largest n for the table-inequality scan")->capture_default_str();
    check_cmd->add_option("--bounds-n-max", check_bounds_nmax, "largest n for the bracket suite")
        ->capture_default_str();
    check_cmd->add_option("--n", check_n, "problem size for gmcst/audit")->capture_default_str();
    check_cmd->add_option("--theorem", check_theorem, "switching-theorem instance (2..6, 0 = all)");
    check_cmd->add_option("--pc", check_pc, "crossover probability for gmcst/audit")->capture_default_str();
    check_cmd->add_option("--problem", check_problem, "restrict the audit to one problem");

    ConfigFlags export_flags;
    int export_n = 3;
    std::string export_out;
    auto* export_cmd = app.add_subcommand("export-chain", "write the exact chain as sparse triplets");
    add_config_flags(export_cmd, export_flags);
    export_cmd->add_option("--n", export_n, "problem size")->required();
    export_cmd->add_option("--out", export_out, "output path (default stdout)");

    std::vector<std::string> expanded;
    std::vector<char*> expanded_ptrs;
    try {
        expanded = expand_config_args(argc, argv);
        expanded_ptrs.reserve(expanded.size());
        for (auto& a : expanded) expanded_ptrs.push_back(a.data());
        app.parse(static_cast<int>(expanded_ptrs.size()), expanded_ptrs.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (run_cmd->parsed()) {
            if (!run_seed_given && !run_exact)
                std::cerr << "warning: using default seed 0; pin --seed for published numbers\n";
            const EaConfig config = make_config(run_flags);
            ExperimentRecord rec;
            if (run_exact) {
                const double exact = efht_uniform(build_chain(config, run_n));
                EfhtEstimate est;
                est.mean = exact;
                est.runs = 0;
                est.master_seed = 0;
                rec = record_from_estimate("exact", config, run_n,
                                           config.strategy ? to_string(*config.strategy)
                                                           : (config.crossover ? pc_label(config.pc) : "mut"),
                                           est, !run_no_timestamp);
            } else {
                McOptions opts;
                opts.cutoff = run_cutoff;
                opts.threads = run_threads;
                const EfhtEstimate est = estimate_efht(config, run_n, run_runs, run_seed, opts);
                if (run_strict && est.censored > 0) {
                    std::cerr << "error: " << est.censored << " censored runs\n";
                    return kExitCensored;
                }
                rec = record_from_estimate("run", config, run_n,
                                           config.strategy ? to_string(*config.strategy)
                                                           : (config.crossover ? pc_label(config.pc) : "mut"),
                                           est, !run_no_timestamp);
            }
            emit_records({rec}, run_out, run_json, !run_no_timestamp);
            return 0;
        }

        if (sweep_cmd->parsed()) {
            if (!sweep_seed_given) std::cerr << "warning: using default seed 0; pin --seed for published numbers\n";
            const EaConfig base = make_config(sweep_flags);
            std::vector<Strategy> strategies;
            if (!sweep_strategies.empty()) {
                std::istringstream is(sweep_strategies);
                std::string tok;
                while (std::getline(is, tok, ',')) strategies.push_back(parse_strategy(tok));
            }
            McOptions opts;
            opts.cutoff = sweep_cutoff;
            opts.threads = sweep_threads;
            const auto points = sweep(base, parse_n_grid(sweep_n),
                                      sweep_pc.empty() ? std::vector<double>{} : parse_pc_grid(sweep_pc), strategies,
                                      sweep_runs, sweep_seed, opts);
            std::vector<ExperimentRecord> records;
            for (const auto& p : points) {
                ExperimentRecord r = record_from_estimate("sweep", p.config, p.n, p.pc_or_strategy, p.estimate,
                                                          !sweep_no_timestamp);
                records.push_back(r);
                if (p.gap) {
                    ExperimentRecord g = r;
                    g.experiment = "gap";
                    g.value = *p.gap;
                    records.push_back(g);
                }
                if (p.ratio) {
                    ExperimentRecord g = r;
                    g.experiment = "ratio";
                    g.value = *p.ratio;
                    records.push_back(g);
                }
            }
            emit_records(records, sweep_out, sweep_json, !sweep_no_timestamp);
            return 0;
        }

        if (fig_cmd->parsed()) {
            if (!fig_seed_given) std::cerr << "warning: using default seed 0; pin --seed for published numbers\n";
            if (fig_kind != "efht" && fig_kind != "gap" && fig_kind != "ratio" && fig_kind != "mr") {
                std::cerr << "unknown figure '" << fig_kind << "'\n";
                return kExitUsage;
            }
            try {
                return run_figures(fig_kind, parse_n_grid(fig_n), parse_pc_grid(fig_pc), fig_runs, fig_seed,
                                   fig_outdir, !fig_no_timestamp, fig_threads);
            } catch (const std::runtime_error& e) {
                if (std::string(e.what()).find("censored") != std::string::npos) {
                    std::cerr << "error: " << e.what() << '\n';
                    return kExitCensored;
                }
                throw;
            }
        }

        if (check_cmd->parsed()) {
            std::vector<CheckResult> results;
            if (check_suite == "props") {
                results = check_props(check_nmax);
            } else if (check_suite == "bounds") {
                results = check_bounds(check_bounds_nmax);
            } else if (check_suite == "gmcst") {
                if (check_theorem == 0) {
                    for (int t : {2, 3, 4, 5, 6}) {
                        const auto r = check_gmcst(t, check_n, check_pc);
                        results.insert(results.end(), r.begin(), r.end());
                    }
                } else {
                    results = check_gmcst(check_theorem, check_n, check_pc);
                }
            } else if (check_suite == "audit") {
                std::vector<Problem> problems = check_problem.empty()
                                                    ? std::vector<Problem>{Problem::LeadingOnes, Problem::OneMax}
                                                    : std::vector<Problem>{parse_problem(check_problem)};
                for (Problem p : problems) {
                    const auto r = check_audit(p, check_n, check_pc);
                    results.insert(results.end(), r.begin(), r.end());
                }
            } else {
                std::cerr << "unknown suite '" << check_suite << "'\n";
                return kExitUsage;
            }
            return print_check_results(results);
        }

        if (export_cmd->parsed()) {
            const EaConfig config = make_config(export_flags);
            const TransitionMatrix chain = build_chain(config, export_n);
            if (export_out.empty() || export_out == "-") {
                write_chain(std::cout, chain);
            } else {
                if (std::filesystem::exists(export_out))
                    throw std::runtime_error("refusing to overwrite " + export_out);
                std::ofstream os(export_out);
                if (!os) throw std::runtime_error("cannot open " + export_out);
                write_chain(os, chain);
            }
            return 0;
        }
    } catch (const SizeLimit& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitSizeLimit;
    } catch (const InvalidConfig& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
