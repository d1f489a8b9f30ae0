#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>

#include "tracekit/cli/config.hpp"
#include "tracekit/cli/report.hpp"
#include "tracekit/cli/runner.hpp"
#include "tracekit/cli/scenarios.hpp"

using namespace tracekit;
using namespace tracekit::cli;

namespace {

std::filesystem::path scratch(const std::string& name) {
    const std::filesystem::path p = std::filesystem::temp_directory_path() / ("tracekit_cli_test_" + name);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

int run_app(const std::string& args) {
    const std::string cmd = std::string(TRACEKIT_APP) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::filesystem::path write_file(const std::filesystem::path& dir, const std::string& name, const std::string& text) {
    const std::filesystem::path p = dir / name;
    std::ofstream(p) << text;
    return p;
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST(Config, DefaultsResolveForEveryScenario) {
    for (const Scenario& s : scenarios()) {
        const RunConfig cfg = default_config(s.name);
        EXPECT_EQ(cfg.scenario, s.name);
        EXPECT_EQ(cfg.command, s.command);
        EXPECT_EQ(cfg.schedule.has_value(), s.uses_schedule) << s.name;
        EXPECT_TRUE(resolved_parameters(cfg).is_object());
    }
}

TEST(Config, RejectsUnknownKeysAndBadValues) {
    EXPECT_THROW(parse_config(json{{"scenario", "sec4-divergence"}, {"colour", 1}}), ConfigError);
    EXPECT_THROW(parse_config(json{{"scenario", "sec4-divergence"}, {"params", {{"phi1_radius", -1.0}}}}), ConfigError);
    EXPECT_THROW(parse_config(json{{"scenario", "sec4-divergence"}, {"params", {{"no_such", 1}}}}), ConfigError);
    EXPECT_THROW(parse_config(json{{"scenario", "sec4-divergence"}, {"command", "weyl"}}), ConfigError);
    EXPECT_THROW(parse_config(json{{"scenario", "nope"}}), ConfigError);
    EXPECT_THROW(parse_config(json{{"scenario", "sec11-weyl"}, {"schedule", {{"r", {1, 10, 100, 1000}}}}}), ConfigError);
    EXPECT_THROW(parse_config(json{{"scenario", "sec4-divergence"}, {"schedule", {{"r", {1, 10, 5, 1000}}}}}), ConfigError);
    EXPECT_THROW(parse_config(json{{"scenario", "sec4-divergence"},
                                   {"quadrature", {{"nodes", 128}, {"panels", 1000}, {"max_refine", 8}}}}),
                 ConfigError);
    EXPECT_THROW(parse_config(json{{"scenario", "sec11-eq10"},
                                   {"params", {{"function", {{"phi1_center", {1.0, 0.0, 0.0}},
                                                             {"phi1_radius", 1.0},
                                                             {"trace_center", 2.0},
                                                             {"trace_radius", 5.0},
                                                             {"omega_radius", 40.0}}}}}}),
                 ConfigError);
}

TEST(Config, OverridesMergeOverDefaults) {
    const RunConfig cfg = parse_config(json{{"scenario", "sec4-divergence"},
                                            {"seed", 42},
                                            {"params", {{"dims", {2}}}},
                                            {"schedule", {{"r", {10, 100, 1000, 10000, 100000}}}}});
    EXPECT_EQ(cfg.seed, 42u);
    EXPECT_EQ(cfg.params["dims"], json::array({2}));
    EXPECT_TRUE(cfg.params.contains("slope_rtol"));
    ASSERT_TRUE(cfg.schedule.has_value());
    EXPECT_EQ(cfg.schedule->r.size(), 5u);
}

TEST(Report, JsonRoundTrip) {
    RunReport r;
    r.command = "trace";
    r.scenario = "sec4-divergence";
    r.parameters = {{"a", 1.5}, {"b", {1, 2}}};
    r.results = {{"slope", 0.1 + 0.2}};
    r.checks.push_back({"slope", true, 1.0 / 3.0, 0.05, "<="});
    r.checks.push_back({"nan", false, std::numeric_limits<double>::quiet_NaN(), 1.0, "<"});
    r.tables.push_back({"t", {{10.0, cplx(0.1, -1e-300), 1e-17}, {100.0, cplx(std::nextafter(1.0, 2.0), 0.0), 0.0}}});
    r.wall_clock = 1.25;
    r.stages = {{"one", 0.5}, {"two", 0.75}};
    const json j = to_json(r, true);
    const RunReport back = report_from_json(json::parse(j.dump()));
    EXPECT_EQ(to_json(back, true).dump(), j.dump());
    EXPECT_FALSE(back.passed());
    EXPECT_TRUE(std::isnan(back.checks[1].value));
    EXPECT_EQ(back.tables[0].rows[1].value.real(), std::nextafter(1.0, 2.0));
}

TEST(Tables, CsvRoundTripIsBitExact) {
    const Table t{"sln2", {{10.0, cplx(0.1, 1.0 / 3.0), 2.2250738585072014e-308},
                           {1e4, cplx(-std::nextafter(0.7, 1.0), 1e300), 4.9406564584124654e-324}}};
    const std::filesystem::path dir = scratch("csv");
    write_table_csv(t, dir / "sln2.csv");
    const Table back = read_table_csv(dir / "sln2.csv");
    EXPECT_EQ(back.name, "sln2");
    ASSERT_EQ(back.rows.size(), t.rows.size());
    for (size_t i = 0; i < t.rows.size(); ++i) {
        EXPECT_EQ(back.rows[i].cutoff, t.rows[i].cutoff);
        EXPECT_EQ(back.rows[i].value, t.rows[i].value);
        EXPECT_EQ(back.rows[i].err, t.rows[i].err);
    }
    const std::string header = "cutoff,partial_value_re,partial_value_im,err_estimate\n";
    EXPECT_EQ(read_file(dir / "sln2.csv").substr(0, header.size()), header);
}

TEST(Tables, EmptyTableIsHeaderOnly) {
    RunReport r;
    r.tables.push_back({"empty", {}});
    const std::filesystem::path dir = scratch("empty");
    const auto written = emit_tables(r, dir);
    ASSERT_EQ(written.size(), 1u);
    EXPECT_EQ(read_file(written[0]), "cutoff,partial_value_re,partial_value_im,err_estimate\n");
    EXPECT_TRUE(read_table_csv(written[0]).rows.empty());
}

TEST(Runner, DivergenceDemoPassesAndTableIsMonotone) {
    const RunOutcome out = run(default_config("sec4-divergence"));
    EXPECT_EQ(out.exit_code, kSuccess) << out.diagnostic;
    ASSERT_FALSE(out.report.tables.empty());
    for (const Table& t : out.report.tables) {
        for (size_t i = 1; i < t.rows.size(); ++i) EXPECT_GE(t.rows[i].value.real(), t.rows[i - 1].value.real());
    }
    for (const json& tr : out.report.results["traces"]) EXPECT_GE(tr["fit_r2"].get<double>(), 0.999);
}

TEST(Runner, FailedCheckGivesExitOne) {
    RunConfig cfg = parse_config(json{{"scenario", "sec4-divergence"}, {"params", {{"slope_rtol", 0.0}}}});
    EXPECT_EQ(run(cfg).exit_code, kCheckFailed);
}

TEST(App, ExitCodes) {
    const std::filesystem::path dir = scratch("app");
    const auto bad_radius = write_file(dir, "bad.json", R"({"command": "trace", "scenario": "sec4-divergence",
        "params": {"phi1_radius": -1.0}})");
    const auto unknown = write_file(dir, "unknown.json", R"({"scenario": "sec4-divergence", "bogus": true})");
    const auto good = write_file(dir, "good.json", R"({"command": "orbits", "scenario": "sec2-mackey-data"})");
    EXPECT_EQ(run_app("trace --config " + bad_radius.string() + " --out " + (dir / "bad").string()), 2);
    EXPECT_FALSE(std::filesystem::exists(dir / "bad" / "report.json"));
    EXPECT_EQ(run_app("trace --config " + unknown.string()), 2);
    EXPECT_EQ(run_app("orbits --config " + good.string() + " --out " + (dir / "good").string()), 0);
    EXPECT_TRUE(std::filesystem::exists(dir / "good" / "report.json"));
    EXPECT_TRUE(std::filesystem::exists(dir / "good" / "timings.json"));
    EXPECT_EQ(run_app("demo --list"), 0);
    EXPECT_EQ(run_app("demo no-such-demo"), 2);
    EXPECT_EQ(run_app("orbits --threads 0 --config " + good.string()), 2);
}

TEST(App, ListNamesEveryDemo) {
    const std::filesystem::path dir = scratch("list");
    const std::string cmd = std::string(TRACEKIT_APP) + " demo --list > " + (dir / "list.txt").string();
    ASSERT_EQ(std::system(cmd.c_str()), 0);
    const std::string text = read_file(dir / "list.txt");
    for (const Scenario& s : scenarios()) EXPECT_NE(text.find(s.name), std::string::npos) << s.name;
    for (const char* word : {"section", "paper", "Section", "Paper"}) EXPECT_EQ(text.find(word), std::string::npos);
}
