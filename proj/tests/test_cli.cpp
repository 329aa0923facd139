#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ealab/records.hpp"

using namespace ealab;

namespace {

std::string cli_path() {
    const char* env = std::getenv("EALAB_CLI");
    REQUIRE(env != nullptr);
    return env;
}

struct CommandResult {
    int exit_code;
    std::string stdout_text;
};

CommandResult run_command(const std::string& args) {
    const std::string out_file = std::filesystem::temp_directory_path() / "ealab_cli_out.txt";
    const std::string cmd = cli_path() + " " + args + " > " + out_file + " 2>/dev/null";
    const int raw = std::system(cmd.c_str());
    std::ifstream is(out_file);
    std::stringstream buffer;
    buffer << is.rdbuf();
    std::filesystem::remove(out_file);
    return {WEXITSTATUS(raw), buffer.str()};
}

}  // namespace

TEST_CASE("csv round trip") {
    std::vector<ExperimentRecord> records;
    ExperimentRecord a;
    a.experiment = "run";
    a.problem = "leadingones";
    a.algo = "2c2";
    a.n = 10;
    a.pc_or_strategy = "0.5";
    a.value = 50.375;
    a.stderr_value = 0.87719298245614035;
    a.runs = 1000;
    a.censored = 0;
    a.seed = 42;
    a.timestamp = "2024-01-01T00:00:00Z";
    records.push_back(a);
    ExperimentRecord b = a;
    b.experiment = "gap";
    b.pc_or_strategy = "mr2";
    b.value = 1.0 / 3.0;
    b.bound = 0.17777506510416666;
    records.push_back(b);

    std::ostringstream os;
    write_csv(os, records, true);
    std::istringstream is(os.str());
    const auto parsed = read_csv(is);
    REQUIRE(parsed.size() == records.size());
    CHECK(parsed[0] == records[0]);
    CHECK(parsed[1] == records[1]);

    // and without the timestamp column
    std::ostringstream os2;
    write_csv(os2, records, false);
    std::istringstream is2(os2.str());
    const auto parsed2 = read_csv(is2);
    REQUIRE(parsed2.size() == 2);
    CHECK(parsed2[0].timestamp.empty());
    CHECK(parsed2[1].value == records[1].value);
}

TEST_CASE("run emits one parseable record") {
    const auto r = run_command(
        "run --algo 2c2 --problem leadingones --mutation onebit --crossover onebit --pc 0.5 --n 8 --runs 200 "
        "--seed 9 --no-timestamp");
    CHECK(r.exit_code == 0);
    std::istringstream is(r.stdout_text);
    const auto records = read_csv(is);
    REQUIRE(records.size() == 1);
    CHECK(records[0].experiment == "run");
    CHECK(records[0].n == 8);
    CHECK(records[0].runs == 200);
    CHECK(records[0].value > 0.0);
}

TEST_CASE("same command and seed give byte-identical output") {
    const std::string cmd =
        "run --algo 2c2 --problem onemax --mutation onebit --crossover onebit --pc 0.1 --n 6 --runs 300 --seed 4 "
        "--no-timestamp";
    const auto a = run_command(cmd);
    const auto b = run_command(cmd);
    CHECK(a.exit_code == 0);
    CHECK(a.stdout_text == b.stdout_text);
}

TEST_CASE("exact flag uses the chain solver") {
    const auto r = run_command("run --exact --algo 1p1 --problem onemax --mutation onebit --n 1 --no-timestamp");
    CHECK(r.exit_code == 0);
    std::istringstream is(r.stdout_text);
    const auto records = read_csv(is);
    REQUIRE(records.size() == 1);
    CHECK(records[0].value == 0.5);
}

TEST_CASE("exit codes") {
    CHECK(run_command("run --no-such-flag").exit_code == 2);
    CHECK(run_command("run --exact --algo 2p2 --problem onemax --mutation onebit --crossover onepoint --pc 0.5 "
                      "--n 12")
              .exit_code == 3);
    CHECK(run_command("check audit --n 3 --pc 0.5").exit_code == 0);
}

TEST_CASE("figures write csv and svg with bound columns") {
    const auto dir = std::filesystem::temp_directory_path() / "ealab_fig_test";
    std::filesystem::remove_all(dir);
    const auto r = run_command("figures ratio --n 6:10:2 --pc 0,0.5 --runs 200 --seed 11 --no-timestamp --outdir " +
                               dir.string());
    CHECK(r.exit_code == 0);
    std::ifstream csv(dir / "ratio.csv");
    REQUIRE(csv.good());
    const auto records = read_csv(csv);
    CHECK(!records.empty());
    for (const auto& rec : records) {
        CHECK(rec.experiment == "ratio");
        REQUIRE(rec.bound.has_value());
        CHECK(*rec.bound == 1.0);
    }
    std::ifstream svg_file(dir / "ratio.svg");
    REQUIRE(svg_file.good());
    std::stringstream svg_text;
    svg_text << svg_file.rdbuf();
    CHECK(svg_text.str().find("<svg") != std::string::npos);
    CHECK(svg_text.str().find("polyline") != std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST_CASE("sweep emits baseline, gap and ratio rows") {
    const auto r = run_command(
        "sweep --algo 2c2 --problem leadingones --mutation onebit --crossover onebit --n 6 --pc 0.5 --runs 200 "
        "--seed 3 --no-timestamp");
    CHECK(r.exit_code == 0);
    std::istringstream is(r.stdout_text);
    const auto records = read_csv(is);
    bool saw_mut = false, saw_gap = false, saw_ratio = false;
    for (const auto& rec : records) {
        saw_mut |= rec.pc_or_strategy == "mut";
        saw_gap |= rec.experiment == "gap";
        saw_ratio |= rec.experiment == "ratio";
    }
    CHECK(saw_mut);
    CHECK(saw_gap);
    CHECK(saw_ratio);
}

TEST_CASE("config file values are overridden by flags") {
    const auto cfg_path = std::filesystem::temp_directory_path() / "ealab_test.cfg";
    {
        std::ofstream cfg(cfg_path);
        cfg << "algo=1p1\nproblem=onemax\nmutation=onebit\nn=1\n";
    }
    const auto defaults = run_command("run --exact --config " + cfg_path.string() + " --no-timestamp");
    CHECK(defaults.exit_code == 0);
    std::istringstream is(defaults.stdout_text);
    const auto records = read_csv(is);
    REQUIRE(records.size() == 1);
    CHECK(records[0].value == 0.5);

    const auto overridden = run_command("run --exact --config " + cfg_path.string() + " --n 2 --no-timestamp");
    std::istringstream is2(overridden.stdout_text);
    const auto records2 = read_csv(is2);
    REQUIRE(records2.size() == 1);
    CHECK(records2[0].n == 2);
    std::filesystem::remove(cfg_path);
}
