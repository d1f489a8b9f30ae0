#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "tracekit/cli/config.hpp"
#include "tracekit/trace/divergence.hpp"

namespace tracekit::cli {

struct Table {
    std::string name;
    std::vector<TraceRow> rows;
};

/// One acceptance-style comparison made inside a scenario.
struct Check {
    std::string name;
    bool passed = false;
    double value = 0.0;
    double threshold = 0.0;
    std::string relation;  // "<=", ">=", "==", ...
};

struct RunReport {
    std::string command;
    std::string scenario;
    json parameters = json::object();
    json results = json::object();
    std::vector<Check> checks;
    std::vector<Table> tables;
    double wall_clock = 0.0;
    std::vector<std::pair<std::string, double>> stages;

    bool passed() const;
};

/// Deterministic payload; timings are included only on request.
json to_json(const RunReport& r, bool with_timings = false);
RunReport report_from_json(const json& j);
json timings_json(const RunReport& r);

json to_json(const Table& t);
Table table_from_json(const json& j);

/// CSV with header cutoff,partial_value_re,partial_value_im,err_estimate and 17 significant digits.
std::string table_csv(const Table& t);
Table parse_table_csv(const std::string& text, const std::string& name);
void write_table_csv(const Table& t, const std::filesystem::path& path);
Table read_table_csv(const std::filesystem::path& path);

/// One file per table, named <table>.csv, inside dir; returns the paths written.
std::vector<std::filesystem::path> emit_tables(const RunReport& r, const std::filesystem::path& dir);

}  // namespace tracekit::cli
