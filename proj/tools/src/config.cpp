#include "tracekit/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "tracekit/cli/scenarios.hpp"
#include "tracekit/util/error.hpp"

namespace tracekit::cli {

ObjectReader::ObjectReader(const json& obj, std::string where) : obj_(obj), where_(std::move(where)) {
    if (!obj_.is_object()) throw ConfigError(where_ + ": expected an object");
}

bool ObjectReader::has(const std::string& key) const { return obj_.contains(key); }

const json& ObjectReader::raw(const std::string& key) {
    if (!has(key)) throw ConfigError(where_ + "." + key + ": missing");
    seen_.push_back(key);
    return obj_.at(key);
}

double ObjectReader::number(const std::string& key, double lo, double hi) {
    const json& v = raw(key);
    if (!v.is_number()) throw ConfigError(where_ + "." + key + ": expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x) || x < lo || x > hi) {
        std::ostringstream os;
        os << where_ << "." << key << " = " << x << " outside [" << lo << ", " << hi << "]";
        throw ConfigError(os.str());
    }
    return x;
}

int ObjectReader::integer(const std::string& key, long lo, long hi) {
    const json& v = raw(key);
    if (!v.is_number_integer()) throw ConfigError(where_ + "." + key + ": expected an integer");
    const long x = v.get<long>();
    if (x < lo || x > hi) {
        std::ostringstream os;
        os << where_ << "." << key << " = " << x << " outside [" << lo << ", " << hi << "]";
        throw ConfigError(os.str());
    }
    return static_cast<int>(x);
}

bool ObjectReader::boolean(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_boolean()) throw ConfigError(where_ + "." + key + ": expected true or false");
    return v.get<bool>();
}

std::string ObjectReader::string(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_string()) throw ConfigError(where_ + "." + key + ": expected a string");
    return v.get<std::string>();
}

void ObjectReader::finish() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it) {
        if (std::find(seen_.begin(), seen_.end(), it.key()) == seen_.end()) {
            throw ConfigError(where_ + ": unknown key '" + it.key() + "'");
        }
    }
}

namespace {

void read_policy(const json& j, NumericPolicy& p) {
    ObjectReader r(j, "policy");
    r.maybe("group_tol", p.group_tol, 1e-16, 1e-2);
    r.maybe("algebra_tol", p.algebra_tol, 1e-16, 1e-2);
    r.maybe("unimodular_tol", p.unimodular_tol, 1e-16, 1e-2);
    r.maybe("stabilizer_tol", p.stabilizer_tol, 1e-16, 1e-2);
    r.maybe("tempered_cauchy_rtol", p.tempered_cauchy_rtol, 1e-14, 1e-1);
    r.maybe("log_fit_r2", p.log_fit_r2, 0.5, 1.0);
    r.maybe("log_slope_factor", p.log_slope_factor, 0.0, 1e6);
    r.maybe("converged_rtol", p.converged_rtol, 1e-14, 1e-1);
    r.maybe("converged_atol", p.converged_atol, 0.0, 1.0);
    r.maybe("fourier_decay_rtol", p.fourier_decay_rtol, 1e-16, 1e-2);
    r.maybe("fit_condition_max", p.fit_condition_max, 1.0, 1e16);
    r.maybe("rel_err_floor", p.rel_err_floor, 1e-300, 1.0);
    r.finish();
}

void read_quadrature(const json& j, QuadratureSpec& q) {
    ObjectReader r(j, "quadrature");
    r.maybe("nodes", q.nodes, 2, 128);
    r.maybe("panels", q.panels, 1, 100000);
    r.maybe("max_refine", q.max_refine, 0, 20);
    r.maybe("rtol", q.rtol, 1e-15, 1e-1);
    r.maybe("atol", q.atol, 0.0, 1.0);
    r.finish();
    const double per_axis = static_cast<double>(q.nodes) * q.panels * std::ldexp(1.0, q.max_refine);
    if (per_axis > kNodeProductLimit) {
        throw ConfigError("quadrature: nodes * panels * 2^max_refine exceeds the node guard");
    }
}

std::vector<double> number_list(const json& v, const std::string& where) {
    if (!v.is_array()) throw ConfigError(where + ": expected an array of numbers");
    std::vector<double> out;
    for (const auto& x : v) {
        if (!x.is_number() || !std::isfinite(x.get<double>())) throw ConfigError(where + ": expected numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

CutoffSchedule read_schedule(const json& j) {
    ObjectReader r(j, "schedule");
    CutoffSchedule cs;
    cs.r = number_list(r.raw("r"), "schedule.r");
    if (r.has("eps")) cs.eps = number_list(r.raw("eps"), "schedule.eps");
    r.finish();
    if (cs.r.size() > 64) throw ConfigError("schedule: at most 64 cutoffs");
    try {
        validate(cs);
    } catch (const Error& e) {
        throw ConfigError(std::string("schedule: ") + e.what());
    }
    if (cs.r.front() <= 0.0) throw ConfigError("schedule.r: cutoffs must be positive");
    return cs;
}

void read_truncation(const json& j, Truncation& t) {
    ObjectReader r(j, "truncation");
    r.maybe("n_max", t.n_max, 1, 4096);
    r.maybe("s_max", t.s_max, 1e-3, 1e3);
    r.maybe("u_max", t.u_max, 1e-3, 100.0);
    r.maybe("v_max", t.v_max, 1e-3, 100.0);
    r.finish();
}

void read_torus_quadrature(const json& j, TorusQuadrature& q) {
    ObjectReader r(j, "torus_quadrature");
    const long cap = static_cast<long>(kNodeProductLimit);
    r.maybe("x_nodes", q.x_nodes, 16, cap);
    r.maybe("t_nodes", q.t_nodes, 16, cap);
    r.maybe("r_nodes", q.r_nodes, 16, cap);
    r.maybe("theta_nodes", q.theta_nodes, 16, cap);
    r.maybe("cartan_nodes_per_unit", q.cartan_nodes_per_unit, 1, 100000);
    r.maybe("weyl_cartan_nodes", q.weyl_cartan_nodes, 16, cap);
    r.maybe("weyl_angle_nodes", q.weyl_angle_nodes, 8, cap);
    r.maybe("weyl_chart_nodes", q.weyl_chart_nodes, 16, cap);
    r.finish();
    auto guard = [](double product, const char* what) {
        if (product > kNodeProductLimit) throw ConfigError(std::string("torus_quadrature: ") + what + " exceeds the node guard");
    };
    guard(static_cast<double>(q.x_nodes) * q.t_nodes, "x_nodes * t_nodes");
    guard(static_cast<double>(q.r_nodes) * q.theta_nodes, "r_nodes * theta_nodes");
    guard(static_cast<double>(q.weyl_angle_nodes) * q.weyl_chart_nodes * q.weyl_chart_nodes,
          "weyl_angle_nodes * weyl_chart_nodes^2");
}

const char* kind_name(const json& v) {
    if (v.is_boolean()) return "boolean";
    if (v.is_number()) return "number";
    if (v.is_string()) return "string";
    if (v.is_array()) return "array";
    return "object";
}

json merge_params(const json& defaults, const json& user) {
    json merged = defaults;
    if (user.is_null()) return merged;
    if (!user.is_object()) throw ConfigError("params: expected an object");
    for (auto it = user.begin(); it != user.end(); ++it) {
        if (!defaults.contains(it.key())) throw ConfigError("params: unknown key '" + it.key() + "'");
        const json& d = defaults.at(it.key());
        if (std::string(kind_name(d)) != kind_name(it.value())) {
            throw ConfigError("params." + it.key() + ": expected " + kind_name(d));
        }
        merged[it.key()] = it.value();
    }
    return merged;
}

}  // namespace

RunConfig parse_config(const json& doc) {
    ObjectReader top(doc, "config");
    RunConfig cfg;
    cfg.scenario = top.string("scenario");
    const Scenario* sc = find_scenario(cfg.scenario);
    if (!sc) throw ConfigError("unknown scenario '" + cfg.scenario + "' (see demo --list)");
    cfg.command = top.has("command") ? top.string("command") : sc->command;
    if (cfg.command != sc->command && cfg.command != "demo") {
        throw ConfigError("scenario '" + cfg.scenario + "' belongs to command '" + sc->command + "'");
    }
    if (top.has("seed")) cfg.seed = static_cast<std::uint64_t>(top.number("seed", 0.0, 9007199254740992.0));
    if (top.has("policy")) read_policy(top.raw("policy"), cfg.policy);
    if (top.has("quadrature")) read_quadrature(top.raw("quadrature"), cfg.quadrature);
    if (sc->uses_schedule) cfg.schedule = sc->default_schedule;
    if (top.has("schedule")) {
        if (!sc->uses_schedule) throw ConfigError("scenario '" + cfg.scenario + "' takes no schedule");
        cfg.schedule = read_schedule(top.raw("schedule"));
    }
    if (top.has("truncation")) read_truncation(top.raw("truncation"), cfg.truncation);
    if (top.has("torus_quadrature")) read_torus_quadrature(top.raw("torus_quadrature"), cfg.torus_quadrature);
    cfg.params = merge_params(sc->defaults, top.has("params") ? top.raw("params") : json());
    if (top.has("output")) {
        ObjectReader out(top.raw("output"), "output");
        if (out.has("dir")) cfg.out_dir = out.string("dir");
        if (out.has("tables")) cfg.write_tables = out.boolean("tables");
        out.finish();
    }
    top.finish();
    try {
        sc->validate(cfg.params, cfg);
    } catch (const Error& e) {
        throw ConfigError(std::string("params: ") + e.what());
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config " + path.string() + ": " + e.what());
    }
    return parse_config(doc);
}

RunConfig default_config(const std::string& scenario) {
    json doc = json::object();
    doc["scenario"] = scenario;
    return parse_config(doc);
}

json resolved_parameters(const RunConfig& cfg) {
    const NumericPolicy& p = cfg.policy;
    json j;
    j["seed"] = cfg.seed;
    j["policy"] = {{"group_tol", p.group_tol},
                   {"algebra_tol", p.algebra_tol},
                   {"unimodular_tol", p.unimodular_tol},
                   {"stabilizer_tol", p.stabilizer_tol},
                   {"tempered_cauchy_rtol", p.tempered_cauchy_rtol},
                   {"log_fit_r2", p.log_fit_r2},
                   {"log_slope_factor", p.log_slope_factor},
                   {"converged_rtol", p.converged_rtol},
                   {"converged_atol", p.converged_atol},
                   {"fourier_decay_rtol", p.fourier_decay_rtol},
                   {"fit_condition_max", p.fit_condition_max},
                   {"rel_err_floor", p.rel_err_floor}};
    const QuadratureSpec& q = cfg.quadrature;
    j["quadrature"] = {{"nodes", q.nodes}, {"panels", q.panels}, {"max_refine", q.max_refine},
                       {"rtol", q.rtol}, {"atol", q.atol}};
    if (cfg.schedule) j["schedule"] = {{"r", cfg.schedule->r}, {"eps", cfg.schedule->eps}};
    const Truncation& t = cfg.truncation;
    j["truncation"] = {{"n_max", t.n_max}, {"s_max", t.s_max}, {"u_max", t.u_max}, {"v_max", t.v_max}};
    const TorusQuadrature& tq = cfg.torus_quadrature;
    j["torus_quadrature"] = {{"x_nodes", tq.x_nodes},
                             {"t_nodes", tq.t_nodes},
                             {"r_nodes", tq.r_nodes},
                             {"theta_nodes", tq.theta_nodes},
                             {"cartan_nodes_per_unit", tq.cartan_nodes_per_unit},
                             {"weyl_cartan_nodes", tq.weyl_cartan_nodes},
                             {"weyl_angle_nodes", tq.weyl_angle_nodes},
                             {"weyl_chart_nodes", tq.weyl_chart_nodes}};
    j["params"] = cfg.params;
    return j;
}

}  // namespace tracekit::cli
