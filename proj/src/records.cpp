#include "ealab/records.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ealab {

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
    return std::string(buf, ptr);
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday,
                  tm.tm_hour, tm.tm_min, tm.tm_sec);
    return buf;
}

namespace {

bool any_bound(const std::vector<ExperimentRecord>& records) {
    for (const auto& r : records)
        if (r.bound) return true;
    return false;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

double parse_double(const std::string& s) {
    if (s.empty()) return 0.0;
    return std::stod(s);
}

}  // namespace

std::string csv_header(bool with_timestamp, bool with_bound) {
    std::string h = "experiment,problem,algo,n,pc_or_strategy,value,stderr,runs,censored,seed";
    if (with_timestamp) h += ",timestamp";
    if (with_bound) h += ",bound";
    return h;
}

void write_csv(std::ostream& os, const std::vector<ExperimentRecord>& records, bool with_timestamp) {
    const bool with_bound = any_bound(records);
    os << csv_header(with_timestamp, with_bound) << '\n';
    for (const auto& r : records) {
        os << r.experiment << ',' << r.problem << ',' << r.algo << ',' << r.n << ',' << r.pc_or_strategy << ','
           << format_double(r.value) << ',' << format_double(r.stderr_value) << ',' << r.runs << ',' << r.censored
           << ',' << r.seed;
        if (with_timestamp) os << ',' << r.timestamp;
        if (with_bound) os << ',' << (r.bound ? format_double(*r.bound) : std::string{});
        os << '\n';
    }
}

std::vector<ExperimentRecord> read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) return {};
    const auto header = split_csv_line(line);
    int ts_col = -1, bound_col = -1;
    for (std::size_t i = 10; i < header.size(); ++i) {
        if (header[i] == "timestamp") ts_col = static_cast<int>(i);
        if (header[i] == "bound") bound_col = static_cast<int>(i);
    }
    std::vector<ExperimentRecord> out;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() < 10) throw std::runtime_error("short CSV row: " + line);
        ExperimentRecord r;
        r.experiment = f[0];
        r.problem = f[1];
        r.algo = f[2];
        r.n = std::stoi(f[3]);
        r.pc_or_strategy = f[4];
        r.value = parse_double(f[5]);
        r.stderr_value = parse_double(f[6]);
        r.runs = std::stoull(f[7]);
        r.censored = std::stoull(f[8]);
        r.seed = std::stoull(f[9]);
        if (ts_col >= 0 && static_cast<std::size_t>(ts_col) < f.size()) r.timestamp = f[static_cast<std::size_t>(ts_col)];
        if (bound_col >= 0 && static_cast<std::size_t>(bound_col) < f.size() &&
            !f[static_cast<std::size_t>(bound_col)].empty())
            r.bound = parse_double(f[static_cast<std::size_t>(bound_col)]);
        out.push_back(std::move(r));
    }
    return out;
}

std::string to_json(const std::vector<ExperimentRecord>& records, bool with_timestamp) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : records) {
        nlohmann::json j{{"experiment", r.experiment}, {"problem", r.problem},   {"algo", r.algo},
                         {"n", r.n},                   {"pc_or_strategy", r.pc_or_strategy},
                         {"value", r.value},           {"stderr", r.stderr_value},
                         {"runs", r.runs},             {"censored", r.censored},
                         {"seed", r.seed}};
        if (with_timestamp) j["timestamp"] = r.timestamp;
        if (r.bound) j["bound"] = *r.bound;
        arr.push_back(std::move(j));
    }
    return arr.dump(2);
}

}  // namespace ealab
