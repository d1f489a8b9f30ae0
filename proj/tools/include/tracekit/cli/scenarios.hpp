#pragma once

#include <chrono>
#include <functional>
#include <string>
#include <vector>

#include "tracekit/cli/config.hpp"
#include "tracekit/cli/report.hpp"

namespace tracekit::cli {

class ScenarioContext {
public:
    ScenarioContext(const RunConfig& cfg, RunReport& report) : cfg(cfg), report(report) {}

    const RunConfig& cfg;
    RunReport& report;

    template <class F>
    auto stage(const std::string& name, F&& f) {
        const auto t0 = std::chrono::steady_clock::now();
        struct Record {
            RunReport& r;
            std::string name;
            std::chrono::steady_clock::time_point t0;
            ~Record() {
                r.stages.emplace_back(name, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
            }
        } rec{report, name, t0};
        return f();
    }

    void check(std::string name, double value, const std::string& relation, double threshold);
    void check(std::string name, bool ok);
    void table(std::string name, std::vector<TraceRow> rows);
};

struct Scenario {
    std::string name;
    std::string command;
    std::string description;
    json defaults;
    bool uses_schedule = false;
    CutoffSchedule default_schedule;
    /// Validates merged parameters; throws ConfigError.
    std::function<void(const json& params, const RunConfig& cfg)> validate;
    std::function<void(ScenarioContext& ctx)> run;
};

const std::vector<Scenario>& scenarios();
/// nullptr when unknown.
const Scenario* find_scenario(const std::string& name);
std::vector<std::string> command_names();

}  // namespace tracekit::cli
