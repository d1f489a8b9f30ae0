#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include "tracekit/cli/runner.hpp"
#include "tracekit/cli/scenarios.hpp"
#include "tracekit/util/parallel.hpp"

using namespace tracekit::cli;

namespace {

struct Options {
    std::string config;
    std::string scenario;
    std::string out;
    int threads = 0;
    std::optional<std::uint64_t> seed;
    bool list = false;
};

void add_common(CLI::App* sub, Options& o) {
    sub->add_option("--out", o.out, "output directory for report.json, timings.json and tables/");
    sub->add_option("--threads", o.threads, "worker threads (default: TRACEKIT_THREADS or 1)")->check(CLI::Range(1, 256));
    sub->add_option("--seed", o.seed, "seed for sampled checks");
}

void print_summary(std::ostream& os, const RunReport& r) {
    for (const Check& c : r.checks) {
        os << (c.passed ? "[PASS] " : "[FAIL] ") << c.name;
        if (c.relation != "==" || c.threshold != 1.0) os << ": " << c.value << " " << c.relation << " " << c.threshold;
        os << "\n";
    }
}

void list_demos() {
    for (const Scenario& s : scenarios()) {
        std::printf("%-18s %-11s %s\n", s.name.c_str(), s.command.c_str(), s.description.c_str());
    }
}

int execute(const std::string& command, const Options& o) {
    json doc = json::object();
    if (!o.config.empty()) {
        std::ifstream in(o.config);
        if (!in) throw ConfigError("cannot open config " + o.config);
        try {
            doc = json::parse(in);
        } catch (const json::parse_error& e) {
            throw ConfigError("config " + o.config + ": " + e.what());
        }
        if (!doc.is_object()) throw ConfigError("config: expected an object");
    }
    if (!doc.contains("command")) doc["command"] = command;
    if (command != "demo" && doc["command"] != command) throw ConfigError("config command does not match '" + command + "'");
    if (!o.scenario.empty()) {
        if (doc.contains("scenario") && doc["scenario"] != o.scenario) throw ConfigError("--scenario disagrees with the config");
        doc["scenario"] = o.scenario;
    }
    if (!doc.contains("scenario")) {
        std::vector<std::string> names;
        for (const Scenario& s : scenarios()) {
            if (s.command == command) names.push_back(s.name);
        }
        if (names.size() != 1) throw ConfigError("command '" + command + "' needs --scenario or a config scenario");
        doc["scenario"] = names.front();
    }
    RunConfig cfg = parse_config(doc);
    if (o.seed) cfg.seed = *o.seed;
    if (!o.out.empty()) cfg.out_dir = o.out;
    if (o.threads > 0) tracekit::set_thread_count(o.threads);

    const RunOutcome outcome = run(cfg);
    if (outcome.exit_code == kConfigError) {
        std::cerr << "config error: " << outcome.diagnostic << "\n";
        return kConfigError;
    }
    if (cfg.out_dir.empty()) {
        std::cout << to_json(outcome.report).dump(2) << "\n";
        print_summary(std::cerr, outcome.report);
    } else {
        write_outputs(cfg, outcome.report);
        print_summary(std::cout, outcome.report);
        std::cout << "wrote " << (cfg.out_dir / "report.json").string() << "\n";
    }
    if (!outcome.diagnostic.empty()) std::cerr << "tracekit: " << outcome.diagnostic << "\n";
    return outcome.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Trace-formula and Plancherel scenarios for semidirect products"};
    app.require_subcommand(1);
    Options o;
    std::string chosen;
    for (const char* name : {"orbits", "tempered", "trace", "weyl", "plancherel"}) {
        CLI::App* sub = app.add_subcommand(name, std::string("run a scenario of the ") + name + " command");
        sub->add_option("--config", o.config, "JSON run configuration")->check(CLI::ExistingFile);
        sub->add_option("--scenario", o.scenario, "scenario name");
        add_common(sub, o);
        sub->callback([&chosen, name] { chosen = name; });
    }
    CLI::App* demo = app.add_subcommand("demo", "run a built-in scenario with its defaults");
    demo->add_option("name", o.scenario, "scenario name");
    demo->add_option("--config", o.config, "JSON run configuration")->check(CLI::ExistingFile);
    demo->add_flag("--list", o.list, "list the scenarios");
    add_common(demo, o);
    demo->callback([&chosen] { chosen = "demo"; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kConfigError;
    }
    try {
        if (chosen == "demo" && o.list) {
            list_demos();
            return 0;
        }
        if (chosen == "demo" && o.scenario.empty() && o.config.empty()) throw ConfigError("demo needs a scenario name");
        return execute(chosen, o);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "tracekit: " << e.what() << "\n";
        return kCheckFailed;
    }
}
