#include "tracekit/cli/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace tracekit::cli {

namespace {

constexpr const char* kCsvHeader = "cutoff,partial_value_re,partial_value_im,err_estimate";

double as_double(const json& v) {
    return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
}

}  // namespace

bool RunReport::passed() const {
    for (const Check& c : checks) {
        if (!c.passed) return false;
    }
    return true;
}

json to_json(const Table& t) {
    json rows = json::array();
    for (const TraceRow& r : t.rows) rows.push_back({r.cutoff, r.value.real(), r.value.imag(), r.err});
    return {{"name", t.name}, {"columns", {"cutoff", "partial_value_re", "partial_value_im", "err_estimate"}},
            {"rows", rows}};
}

Table table_from_json(const json& j) {
    Table t;
    t.name = j.at("name").get<std::string>();
    for (const auto& row : j.at("rows")) {
        t.rows.push_back({as_double(row.at(0)), cplx(as_double(row.at(1)), as_double(row.at(2))), as_double(row.at(3))});
    }
    return t;
}

json to_json(const RunReport& r, bool with_timings) {
    json j;
    j["command"] = r.command;
    j["scenario"] = r.scenario;
    j["parameters"] = r.parameters;
    j["results"] = r.results;
    json checks = json::array();
    for (const Check& c : r.checks) {
        checks.push_back({{"name", c.name},
                          {"passed", c.passed},
                          {"value", c.value},
                          {"relation", c.relation},
                          {"threshold", c.threshold}});
    }
    j["checks"] = checks;
    j["passed"] = r.passed();
    json tables = json::array();
    for (const Table& t : r.tables) tables.push_back(to_json(t));
    j["tables"] = tables;
    if (with_timings) j["timings"] = timings_json(r);
    return j;
}

json timings_json(const RunReport& r) {
    json stages = json::array();
    for (const auto& [name, seconds] : r.stages) stages.push_back({{"stage", name}, {"seconds", seconds}});
    return {{"wall_clock_s", r.wall_clock}, {"stages", stages}};
}

RunReport report_from_json(const json& j) {
    RunReport r;
    r.command = j.at("command").get<std::string>();
    r.scenario = j.at("scenario").get<std::string>();
    r.parameters = j.at("parameters");
    r.results = j.at("results");
    for (const auto& c : j.at("checks")) {
        r.checks.push_back({c.at("name").get<std::string>(), c.at("passed").get<bool>(), as_double(c.at("value")),
                            as_double(c.at("threshold")), c.at("relation").get<std::string>()});
    }
    for (const auto& t : j.at("tables")) r.tables.push_back(table_from_json(t));
    if (j.contains("timings")) {
        const json& tm = j.at("timings");
        r.wall_clock = tm.at("wall_clock_s").get<double>();
        for (const auto& s : tm.at("stages")) r.stages.emplace_back(s.at("stage").get<std::string>(), s.at("seconds").get<double>());
    }
    return r;
}

std::string table_csv(const Table& t) {
    std::string out = kCsvHeader;
    out += '\n';
    char buf[128];
    for (const TraceRow& r : t.rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", r.cutoff, r.value.real(), r.value.imag(), r.err);
        out += buf;
    }
    return out;
}

Table parse_table_csv(const std::string& text, const std::string& name) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) throw std::runtime_error("table " + name + ": bad header");
    Table t;
    t.name = name;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        double v[4];
        const char* p = line.c_str();
        for (int i = 0; i < 4; ++i) {
            char* end = nullptr;
            v[i] = std::strtod(p, &end);
            if (end == p || (i < 3 && *end != ',') || (i == 3 && *end != '\0')) {
                throw std::runtime_error("table " + name + ": bad row '" + line + "'");
            }
            p = end + 1;
        }
        t.rows.push_back({v[0], cplx(v[1], v[2]), v[3]});
    }
    return t;
}

void write_table_csv(const Table& t, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << table_csv(t);
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

Table read_table_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_table_csv(text.str(), path.stem().string());
}

std::vector<std::filesystem::path> emit_tables(const RunReport& r, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;
    for (const Table& t : r.tables) {
        const std::filesystem::path p = dir / (t.name + ".csv");
        write_table_csv(t, p);
        written.push_back(p);
    }
    return written;
}

}  // namespace tracekit::cli
