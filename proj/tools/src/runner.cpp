#include "tracekit/cli/runner.hpp"

#include <chrono>
#include <fstream>

#include "tracekit/cli/scenarios.hpp"
#include "tracekit/util/error.hpp"

namespace tracekit::cli {

namespace {

bool is_config_code(ErrorCode c) {
    switch (c) {
        case ErrorCode::InvalidArgument:
        case ErrorCode::BadSchedule:
        case ErrorCode::UnsupportedFamily:
        case ErrorCode::UnsupportedChart:
            return true;
        default:
            return false;
    }
}

void write_text(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    out << text;
    if (!out) throw std::runtime_error("write failed for " + p.string());
}

}  // namespace

RunOutcome run(const RunConfig& cfg) {
    RunOutcome o;
    o.report.command = cfg.command;
    o.report.scenario = cfg.scenario;
    o.report.parameters = resolved_parameters(cfg);
    const Scenario* sc = find_scenario(cfg.scenario);
    if (!sc) {
        o.exit_code = kConfigError;
        o.diagnostic = "unknown scenario '" + cfg.scenario + "'";
        return o;
    }
    const auto t0 = std::chrono::steady_clock::now();
    try {
        ScenarioContext ctx(cfg, o.report);
        sc->run(ctx);
        o.exit_code = o.report.passed() ? kSuccess : kCheckFailed;
        if (o.exit_code != kSuccess) o.diagnostic = "one or more checks failed";
    } catch (const ConfigError& e) {
        o.exit_code = kConfigError;
        o.diagnostic = e.what();
    } catch (const Error& e) {
        o.exit_code = is_config_code(e.code()) ? kConfigError : kCheckFailed;
        o.diagnostic = std::string(to_string(e.code())) + ": " + e.what();
    } catch (const std::exception& e) {
        o.exit_code = kCheckFailed;
        o.diagnostic = e.what();
    }
    o.report.wall_clock = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return o;
}

void write_outputs(const RunConfig& cfg, const RunReport& report) {
    std::filesystem::create_directories(cfg.out_dir);
    write_text(cfg.out_dir / "report.json", to_json(report).dump(2) + "\n");
    write_text(cfg.out_dir / "timings.json", timings_json(report).dump(2) + "\n");
    if (cfg.write_tables) emit_tables(report, cfg.out_dir / "tables");
}

}  // namespace tracekit::cli
