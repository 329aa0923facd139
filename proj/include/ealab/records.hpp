#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ealab {

// One row of experiment output. The CSV header is fixed:
//   experiment,problem,algo,n,pc_or_strategy,value,stderr,runs,censored,seed
// optionally followed by `timestamp` and/or `bound` columns (figure CSVs
// carry `bound` where a theorem bound applies).
struct ExperimentRecord {
    std::string experiment;
    std::string problem;
    std::string algo;
    int n = 0;
    std::string pc_or_strategy;
    double value = 0.0;
    double stderr_value = 0.0;
    std::uint64_t runs = 0;
    std::uint64_t censored = 0;
    std::uint64_t seed = 0;
    std::string timestamp;        // empty when suppressed
    std::optional<double> bound;  // emitted only when any record has one

    bool operator==(const ExperimentRecord&) const = default;
};

std::string csv_header(bool with_timestamp, bool with_bound);
void write_csv(std::ostream& os, const std::vector<ExperimentRecord>& records, bool with_timestamp);
std::vector<ExperimentRecord> read_csv(std::istream& is);
std::string to_json(const std::vector<ExperimentRecord>& records, bool with_timestamp);

std::string utc_timestamp();
std::string format_double(double v);  // shortest round-trip form

}  // namespace ealab
