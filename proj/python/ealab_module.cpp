#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ealab/chain.hpp"
#include "ealab/exact.hpp"
#include "ealab/montecarlo.hpp"
#include "ealab/names.hpp"

namespace py = pybind11;
using namespace ealab;

namespace {

EaConfig config_from_names(const std::string& algo, const std::string& problem, const std::string& mutation,
                           const std::string& crossover, double pc, const std::string& strategy,
                           const std::string& tie) {
    EaConfig c;
    c.algorithm = parse_algorithm(algo);
    c.problem = parse_problem(problem);
    c.mutation = parse_mutation(mutation);
    c.tie = parse_tie_policy(tie);
    if (!strategy.empty()) {
        c.strategy = parse_strategy(strategy);
    } else if (!crossover.empty()) {
        c.crossover = parse_crossover(crossover);
        c.pc = pc;
    }
    c.validate();
    return c;
}

TheoremId theorem_from_name(const std::string& name) {
    for (TheoremId id : {TheoremId::T2, TheoremId::T3, TheoremId::T4, TheoremId::T5, TheoremId::T6,
                         TheoremId::T7Gap, TheoremId::T7Ratio, TheoremId::T8Gap})
        if (to_string(id) == name) return id;
    throw std::invalid_argument("unknown theorem id '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(ealab, m) {
    m.doc() = "Exact and Monte Carlo hitting-time analysis of crossover-enabled evolutionary algorithms";

    m.def(
        "evaluate",
        [](const std::string& problem, const std::string& bits) {
            return evaluate(parse_problem(problem), BitString::from_string(bits));
        },
        py::arg("problem"), py::arg("bits"));

    m.def(
        "mutate",
        [](const std::string& kind, const std::string& bits, std::uint64_t seed) {
            Rng rng(seed);
            return mutate(parse_mutation(kind), BitString::from_string(bits), rng).to_string();
        },
        py::arg("kind"), py::arg("bits"), py::arg("seed"));

    m.def(
        "crossover",
        [](const std::string& kind, const std::string& bits1, const std::string& bits2, std::uint64_t seed) {
            Rng rng(seed);
            auto [o1, o2] = crossover(parse_crossover(kind), BitString::from_string(bits1),
                                      BitString::from_string(bits2), rng);
            return py::make_tuple(o1.to_string(), o2.to_string());
        },
        py::arg("kind"), py::arg("bits1"), py::arg("bits2"), py::arg("seed"));

    m.def(
        "run_trial",
        [](const std::string& algo, const std::string& problem, int n, std::uint64_t seed, std::uint64_t cutoff,
           const std::string& mutation, const std::string& crossover, double pc, const std::string& strategy,
           const std::string& tie) {
            if (cutoff == 0) cutoff = default_cutoff(n);
            const TrialResult r =
                run_trial(config_from_names(algo, problem, mutation, crossover, pc, strategy, tie), n, seed, cutoff);
            return py::make_tuple(r.steps, r.censored);
        },
        py::arg("algo"), py::arg("problem"), py::arg("n"), py::arg("seed"), py::arg("cutoff") = 0ULL,
        py::arg("mutation") = "onebit", py::arg("crossover") = "", py::arg("pc") = 0.0, py::arg("strategy") = "",
        py::arg("tie") = "keepparent");

    m.def(
        "estimate_efht",
        [](const std::string& algo, const std::string& problem, int n, std::uint64_t runs, std::uint64_t seed,
           const std::string& mutation, const std::string& crossover, double pc, const std::string& strategy,
           const std::string& tie, std::uint64_t cutoff, int threads) {
            McOptions opts;
            opts.cutoff = cutoff;
            opts.threads = threads;
            const EfhtEstimate est = estimate_efht(
                config_from_names(algo, problem, mutation, crossover, pc, strategy, tie), n, runs, seed, opts);
            py::dict d;
            d["mean"] = est.mean;
            d["stderr"] = est.stderr_mean;
            d["runs"] = est.runs;
            d["censored"] = est.censored;
            d["cutoff"] = est.cutoff;
            d["fingerprint"] = est.fingerprint;
            return d;
        },
        py::arg("algo"), py::arg("problem"), py::arg("n"), py::arg("runs"), py::arg("seed"),
        py::arg("mutation") = "onebit", py::arg("crossover") = "", py::arg("pc") = 0.0, py::arg("strategy") = "",
        py::arg("tie") = "keepparent", py::arg("cutoff") = 0ULL, py::arg("threads") = 0);

    m.def(
        "exact_efht",
        [](const std::string& algo, const std::string& problem, int n, const std::string& mutation,
           const std::string& crossover, double pc, const std::string& strategy, const std::string& tie) {
            return efht_uniform(
                build_chain(config_from_names(algo, problem, mutation, crossover, pc, strategy, tie), n));
        },
        py::arg("algo"), py::arg("problem"), py::arg("n"), py::arg("mutation") = "onebit",
        py::arg("crossover") = "", py::arg("pc") = 0.0, py::arg("strategy") = "", py::arg("tie") = "keepparent");

    m.def(
        "cfht_table",
        [](const std::string& problem, int n) {
            const CfhtTable t = cfht_table(parse_problem(problem), n);
            std::vector<std::vector<double>> rows(static_cast<std::size_t>(n) + 1);
            for (int i = 0; i <= n; ++i) {
                rows[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(n) + 1);
                for (int j = 0; j <= n; ++j) rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = t.at(i, j);
            }
            return rows;
        },
        py::arg("problem"), py::arg("n"));

    m.def("ref_dcfht_leadingones", &ref_dcfht_leadingones, py::arg("n"));
    m.def("ref_dcfht_onemax", &ref_dcfht_onemax, py::arg("n"));
    m.def("harmonic", &harmonic, py::arg("k"));

    m.def(
        "theorem_bound",
        [](const std::string& id, int n, double pc) {
            const BoundReport r = theorem_bound(theorem_from_name(id), n, pc);
            py::dict d;
            d["id"] = to_string(r.id);
            d["n"] = r.n;
            d["pc"] = r.pc;
            if (r.lower) d["lower"] = *r.lower;
            if (r.upper) d["upper"] = *r.upper;
            return d;
        },
        py::arg("id"), py::arg("n"), py::arg("pc"));

    m.def("gap_statistic", &gap_statistic, py::arg("efht_cross"), py::arg("efht_mut"), py::arg("n"), py::arg("pc"));
    m.def("ratio_statistic", &ratio_statistic, py::arg("efht_cross"), py::arg("efht_mut"), py::arg("pc"));
    m.def("pair_marginals", [](int n, double pc, long t) {
        const PairMarginals p = pair_marginals(n, pc, t);
        return py::make_tuple(p.p00, p.p01);
    });
    m.def("equal_lo_lower_bound", &equal_lo_lower_bound, py::arg("n"), py::arg("pc"), py::arg("t"));
}
