#include "tracekit/cli/scenarios.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include "tracekit/orbits/orbit_measure.hpp"
#include "tracekit/plancherel/plancherel.hpp"
#include "tracekit/testfn/fourier.hpp"
#include "tracekit/trace/trace.hpp"
#include "tracekit/util/error.hpp"

namespace tracekit::cli {

void ScenarioContext::check(std::string name, double value, const std::string& relation, double threshold) {
    bool ok = false;
    if (relation == "<=") ok = value <= threshold;
    else if (relation == "<") ok = value < threshold;
    else if (relation == ">=") ok = value >= threshold;
    else if (relation == ">") ok = value > threshold;
    else if (relation == "==") ok = value == threshold;
    report.checks.push_back({std::move(name), ok, value, threshold, relation});
}

void ScenarioContext::check(std::string name, bool ok) {
    report.checks.push_back({std::move(name), ok, ok ? 1.0 : 0.0, 1.0, "=="});
}

void ScenarioContext::table(std::string name, std::vector<TraceRow> rows) {
    report.tables.push_back({std::move(name), std::move(rows)});
}

namespace {

std::string fmt_num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

std::string fmt_vec(const Eigen::VectorXd& v) {
    std::string s = "(";
    for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt_num(v(i));
    return s + ")";
}

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

json vec_json(const Eigen::VectorXd& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

json trace_json(const TraceResult& r) {
    json j;
    j["verdict"] = verdict_name(r.verdict);
    if (const auto* c = std::get_if<Converged>(&r.verdict)) {
        j["value"] = cplx_json(c->value);
        j["err"] = c->err;
    } else if (const auto* l = std::get_if<LogDivergent>(&r.verdict)) {
        j["slope"] = l->slope;
        j["intercept"] = l->intercept;
        j["fit_r2"] = l->fit_r2;
    } else {
        j["reason"] = std::get<Inconclusive>(r.verdict).reason;
    }
    json d = json::object();
    for (const auto& [k, v] : r.diagnostics) d[k] = v;
    j["diagnostics"] = d;
    return j;
}

HFamily parse_family(const std::string& name) {
    for (HFamily f : {HFamily::SL2R, HFamily::SL3R, HFamily::SO12, HFamily::O11, HFamily::SO2,
                      HFamily::O12_COMPACTDEMO, HFamily::HEIS3, HFamily::UNIP4, HFamily::ADJ_SL2R}) {
        if (hfamily_name(f) == name) return f;
    }
    throw ConfigError("unknown family '" + name + "'");
}

Eigen::VectorXd read_vec(ObjectReader& r, const std::string& key, int dim, const std::string& where) {
    const json& v = r.raw(key);
    if (!v.is_array()) throw ConfigError(where + "." + key + ": expected an array");
    if (dim >= 0 && static_cast<int>(v.size()) != dim) {
        throw ConfigError(where + "." + key + ": expected " + std::to_string(dim) + " entries");
    }
    Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number() || !std::isfinite(v[i].get<double>()) || std::abs(v[i].get<double>()) > 1e6) {
            throw ConfigError(where + "." + key + ": entries must be finite numbers of modulus at most 1e6");
        }
        out(static_cast<Eigen::Index>(i)) = v[i].get<double>();
    }
    return out;
}

std::vector<double> read_list(ObjectReader& r, const std::string& key, double lo, double hi, std::size_t max_len,
                              const std::string& where) {
    const json& v = r.raw(key);
    if (!v.is_array() || v.empty() || v.size() > max_len) {
        throw ConfigError(where + "." + key + ": expected 1 to " + std::to_string(max_len) + " numbers");
    }
    std::vector<double> out;
    for (const auto& x : v) {
        if (!x.is_number()) throw ConfigError(where + "." + key + ": expected numbers");
        const double d = x.get<double>();
        if (!std::isfinite(d) || d < lo || d > hi) {
            throw ConfigError(where + "." + key + ": " + fmt_num(d) + " outside [" + fmt_num(lo) + ", " + fmt_num(hi) + "]");
        }
        out.push_back(d);
    }
    return out;
}

const json& read_array(ObjectReader& r, const std::string& key, std::size_t max_len, const std::string& where) {
    const json& v = r.raw(key);
    if (!v.is_array() || v.empty() || v.size() > max_len) {
        throw ConfigError(where + "." + key + ": expected 1 to " + std::to_string(max_len) + " entries");
    }
    return v;
}

int family_dim(HFamily f) { return make_semidirect(f).n_dim; }

// ---------------------------------------------------------------- orbits

struct OrbitCase {
    HFamily family;
    Eigen::VectorXd xi;
    std::optional<std::string> expect_label;
    std::optional<bool> expect_compact;
};

struct MackeyParams {
    std::vector<OrbitCase> cases;
    int trajectory_samples = 100;
    int chart_samples = 16;
    double h_scale = 1.0;
};

MackeyParams read_mackey(const json& p) {
    ObjectReader r(p, "params");
    MackeyParams m;
    const json& cases = read_array(r, "cases", 64, "params");
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const std::string where = "params.cases[" + std::to_string(i) + "]";
        ObjectReader c(cases[i], where);
        OrbitCase oc;
        oc.family = parse_family(c.string("family"));
        oc.xi = read_vec(c, "xi", family_dim(oc.family), where);
        if (c.has("expect_label")) oc.expect_label = c.string("expect_label");
        if (c.has("expect_compact")) oc.expect_compact = c.boolean("expect_compact");
        c.finish();
        m.cases.push_back(oc);
    }
    m.trajectory_samples = r.integer("trajectory_samples", 1, 100000);
    m.chart_samples = r.integer("chart_samples", 1, 100000);
    m.h_scale = r.number("h_scale", 1e-6, 4.0);
    r.finish();
    return m;
}

void run_mackey(ScenarioContext& ctx) {
    const MackeyParams m = read_mackey(ctx.cfg.params);
    const NumericPolicy& pol = ctx.cfg.policy;
    std::mt19937_64 rng(ctx.cfg.seed);
    json out = json::array();
    for (const OrbitCase& c : m.cases) {
        const std::string tag = std::string(hfamily_name(c.family)) + " xi=" + fmt_vec(c.xi);
        ctx.stage("mackey " + tag, [&] {
            const SemidirectDescriptor sd = make_semidirect(c.family);
            const InducedRepDescriptor rep = make_induced_rep(sd, c.xi, StabRep::trivial(), pol);
            const StabilizerDescriptor& st = rep.stab;

            double fix_err = 0.0;
            std::uniform_real_distribution<double> unit(0.0, 1.0);
            for (const GroupElement& comp : st.components) {
                for (int s = 0; s < (st.dimension == 0 ? 1 : m.chart_samples); ++s) {
                    std::vector<double> coords(st.dimension);
                    for (int a = 0; a < st.dimension; ++a) {
                        const double lo = std::max(st.axes[a].lo, -2.0);
                        const double hi = std::min(st.axes[a].hi, 2.0);
                        coords[a] = lo + (hi - lo) * unit(rng);
                    }
                    const CharacterPoint moved = dual_action(sd, comp * st.param(coords), rep.chi);
                    fix_err = std::max(fix_err, (moved.xi - c.xi).norm());
                }
            }

            bool label_stable = true;
            double drift = 0.0;
            for (int s = 0; s < m.trajectory_samples; ++s) {
                const GroupElement h = random_h(sd, rng, m.h_scale);
                const OrbitClass moved = classify_orbit(sd, dual_action(sd, h, rep.chi), pol);
                label_stable = label_stable && moved.label == rep.orbit.label;
                for (std::size_t k = 0; k < rep.orbit.invariants.size() && k < moved.invariants.size(); ++k) {
                    const double ref = rep.orbit.invariants[k];
                    drift = std::max(drift, std::abs(moved.invariants[k] - ref) / std::max(1.0, std::abs(ref)));
                }
            }

            json stab;
            stab["compact"] = st.compact;
            stab["dimension"] = st.dimension;
            stab["components"] = st.components.size();
            stab["description"] = st.description;
            json row;
            row["family"] = hfamily_name(c.family);
            row["xi"] = vec_json(c.xi);
            row["label"] = label_name(rep.orbit.label);
            row["invariants"] = rep.orbit.invariants;
            row["branch"] = rep.orbit.branch;
            row["representative"] = vec_json(rep.orbit.representative);
            row["stabilizer"] = stab;
            row["stabilizer_rep"] = "trivial";
            row["regular"] = rep.regular;
            row["max_fix_error"] = fix_err;
            row["label_stable"] = label_stable;
            row["max_invariant_drift"] = drift;
            out.push_back(row);

            ctx.check(tag + " stabilizer fixes xi", fix_err, "<=", pol.stabilizer_tol * std::max(1.0, c.xi.norm()));
            ctx.check(tag + " label constant on trajectories", label_stable);
            ctx.check(tag + " invariants preserved", drift, "<=", 1e-9);
            if (c.expect_label) ctx.check(tag + " label is " + *c.expect_label, *c.expect_label == label_name(rep.orbit.label));
            if (c.expect_compact) {
                ctx.check(tag + " stabilizer compact is " + (*c.expect_compact ? "true" : "false"),
                          *c.expect_compact == st.compact);
            }
        });
    }
    ctx.report.results["orbits"] = out;
}

// ---------------------------------------------------------------- tempered

struct TemperedCase {
    HFamily family;
    Eigen::VectorXd xi;
    std::string expect;
};

struct TemperedParams {
    std::vector<TemperedCase> cases;
    int k_max = 3;
};

TemperedParams read_tempered(const json& p) {
    ObjectReader r(p, "params");
    TemperedParams t;
    const json& cases = read_array(r, "cases", 32, "params");
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const std::string where = "params.cases[" + std::to_string(i) + "]";
        ObjectReader c(cases[i], where);
        TemperedCase tc;
        tc.family = parse_family(c.string("family"));
        tc.xi = read_vec(c, "xi", family_dim(tc.family), where);
        tc.expect = c.has("expect") ? c.string("expect") : "any";
        if (tc.expect != "Tempered" && tc.expect != "NotTempered" && tc.expect != "Inconclusive" && tc.expect != "any") {
            throw ConfigError(where + ".expect: one of Tempered, NotTempered, Inconclusive, any");
        }
        c.finish();
        t.cases.push_back(tc);
    }
    t.k_max = r.integer("k_max", 1, 8);
    r.finish();
    return t;
}

std::string kind_name(TemperednessVerdict::Kind k) {
    switch (k) {
        case TemperednessVerdict::Kind::Tempered: return "Tempered";
        case TemperednessVerdict::Kind::NotTempered: return "NotTempered";
        case TemperednessVerdict::Kind::Inconclusive: return "Inconclusive";
    }
    return "?";
}

void run_tempered(ScenarioContext& ctx) {
    const TemperedParams t = read_tempered(ctx.cfg.params);
    const RadialSchedule sched{ctx.cfg.schedule->r, ctx.cfg.schedule->eps};
    json out = json::array();
    for (const TemperedCase& c : t.cases) {
        const std::string tag = std::string(hfamily_name(c.family)) + " xi=" + fmt_vec(c.xi);
        ctx.stage("tempered " + tag, [&] {
            const SemidirectDescriptor sd = make_semidirect(c.family);
            const OrbitClass cls = classify_orbit(sd, character_point(sd, c.xi), ctx.cfg.policy);
            const OrbitMeasure mu = orbit_measure(sd, cls);
            const TemperednessVerdict v = tempered_test(mu, t.k_max, sched, ctx.cfg.quadrature, ctx.cfg.policy);

            json ev = json::array();
            double min_r2 = 1.0;
            for (const TemperedEvidence& e : v.evidence) {
                ev.push_back({{"k", e.k},
                              {"cutoff", e.cutoff},
                              {"eps", e.eps},
                              {"partial", e.partial},
                              {"partial_fixed", e.partial_fixed},
                              {"cauchy", e.cauchy},
                              {"fit_slope", e.fit_slope},
                              {"fit_r2", e.fit_r2}});
                min_r2 = std::min(min_r2, e.fit_r2);
            }
            out.push_back({{"family", hfamily_name(c.family)},
                           {"xi", vec_json(c.xi)},
                           {"label", label_name(cls.label)},
                           {"verdict", verdict_name(v)},
                           {"k", v.k},
                           {"evidence", ev}});

            const int shown = v.kind == TemperednessVerdict::Kind::Tempered ? v.k : 1;
            for (const TemperedEvidence& e : v.evidence) {
                if (e.k != shown) continue;
                std::vector<TraceRow> rows;
                for (std::size_t i = 0; i < e.cutoff.size(); ++i) rows.push_back({e.cutoff[i], cplx(e.partial[i], 0.0), 0.0});
                ctx.table(std::string(hfamily_name(c.family)) + "_" + std::string(label_name(cls.label)) + "_k" +
                              std::to_string(e.k),
                          rows);
            }
            if (c.expect != "any") ctx.check(tag + " verdict is " + c.expect, kind_name(v.kind) == c.expect);
            if (v.kind == TemperednessVerdict::Kind::NotTempered) {
                ctx.check(tag + " log fit R^2", min_r2, ">=", ctx.cfg.policy.log_fit_r2);
            }
        });
    }
    ctx.report.results["cases"] = out;
}

// ---------------------------------------------------------------- Rn x SL(n)

struct SlnParams {
    std::vector<int> dims;
    Eigen::VectorXd center2, center3;
    double phi1_radius = 1.0;
    double lambda_center = 1.0;
    double lambda_radius = 0.5;
    double slope_rtol = 0.05;
};

SlnParams read_sln(const json& p) {
    ObjectReader r(p, "params");
    SlnParams s;
    for (double d : read_list(r, "dims", 2, 3, 2, "params")) {
        if (d != 2.0 && d != 3.0) throw ConfigError("params.dims: entries must be 2 or 3");
        s.dims.push_back(static_cast<int>(d));
    }
    s.center2 = read_vec(r, "phi1_center_2d", 2, "params");
    s.center3 = read_vec(r, "phi1_center_3d", 3, "params");
    s.phi1_radius = r.number("phi1_radius", 1e-3, 1e3);
    s.lambda_center = r.number("lambda_center", 1e-3, 1e3);
    s.lambda_radius = r.number("lambda_radius", 1e-3, 1e3);
    if (s.lambda_radius >= s.lambda_center) throw ConfigError("params.lambda_radius must be below lambda_center");
    s.slope_rtol = r.number("slope_rtol", 0.0, 1.0);
    r.finish();
    return s;
}

SeparableTestFn sln_test_function(const SlnParams& s, int n) {
    const ChartFactor lambda{s.lambda_center, s.lambda_radius, 1.0};
    if (n == 2) {
        return {single(BumpND{s.center2, s.phi1_radius, 1.0}),
                make_chart_fn(GroupChart::SL2_KAM0U, {std::nullopt, lambda, ChartFactor{0.0, 1.0, 1.0}})};
    }
    return {single(BumpND{s.center3, s.phi1_radius, 1.0}),
            make_chart_fn(GroupChart::SL3_KAM0U, {lambda, std::nullopt, ChartFactor{0.0, 0.5, 1.0}, ChartFactor{0.0, 1.0, 1.0},
                                                  ChartFactor{0.0, 1.0, 1.0}, ChartFactor{0.0, 1.0, 1.0}})};
}

void log_divergence_checks(ScenarioContext& ctx, const std::string& tag, const TraceResult& res, double expected,
                           double rtol) {
    ctx.check(tag + " verdict is LogDivergent", res.log_divergent());
    if (const auto* l = std::get_if<LogDivergent>(&res.verdict)) {
        ctx.check(tag + " fit R^2", l->fit_r2, ">=", ctx.cfg.policy.log_fit_r2);
        ctx.check(tag + " slope relative error", std::abs(l->slope - expected) / std::abs(expected), "<=", rtol);
    }
}

void run_sln(ScenarioContext& ctx) {
    const SlnParams s = read_sln(ctx.cfg.params);
    json out = json::array();
    for (int n : s.dims) {
        const std::string tag = "R^" + std::to_string(n) + " x SL(" + std::to_string(n) + ")";
        const TraceResult res = ctx.stage("sln n=" + std::to_string(n), [&] {
            return trace_rn_sln(sln_test_function(s, n), n, *ctx.cfg.schedule, ctx.cfg.quadrature, ctx.cfg.policy);
        });
        const double expected = 2.0 * res.diagnostic("phi1_hat_0") * res.diagnostic("m0u_integral");
        json row = trace_json(res);
        row["n"] = n;
        row["expected_slope"] = expected;
        out.push_back(row);
        ctx.table("sln" + std::to_string(n), res.table);
        log_divergence_checks(ctx, tag, res, expected, s.slope_rtol);
    }
    ctx.report.results["traces"] = out;
}

// ---------------------------------------------------------------- compact stabilizers

struct CompactParams {
    Eigen::VectorXd so2_xi;
    double so12_alpha = 1.0;
    double agreement_rtol = 1e-6;
};

CompactParams read_compact(const json& p) {
    ObjectReader r(p, "params");
    CompactParams c;
    c.so2_xi = read_vec(r, "so2_xi", 2, "params");
    if (c.so2_xi.norm() == 0.0) throw ConfigError("params.so2_xi must be nonzero");
    c.so12_alpha = r.number("so12_alpha", 1e-3, 1e3);
    c.agreement_rtol = r.number("agreement_rtol", 0.0, 1.0);
    r.finish();
    return c;
}

void run_compact(ScenarioContext& ctx) {
    const CompactParams c = read_compact(ctx.cfg.params);
    const QuadratureSpec& q = ctx.cfg.quadrature;
    const NumericPolicy& pol = ctx.cfg.policy;

    const InducedRepDescriptor so2 = make_induced_rep(make_semidirect(HFamily::SO2), c.so2_xi, StabRep::trivial(), pol);
    const SeparableTestFn phi2d{single(BumpND{Eigen::Vector2d(0.2, 0.1), 1.0, 1.0}),
                                make_chart_fn(GroupChart::SO2_ANGLE, {ChartFactor{0.0, 1.0, 2.0}})};
    const TraceResult eq1 = ctx.stage("so2 orbit form", [&] {
        return trace_eq1(so2, phi2d, q, CutoffSchedule::decades(0, 3), pol);
    });
    const TraceResult cmp = ctx.stage("so2 compact", [&] { return trace_compact(so2, phi2d, q, pol); });

    const InducedRepDescriptor so12 = make_induced_rep(make_semidirect(HFamily::SO12),
                                                       Eigen::Vector3d(c.so12_alpha, 0.0, 0.0), StabRep::trivial(), pol);
    const SeparableTestFn phi3d{single(BumpND{Eigen::Vector3d::Zero(), 1.0, 1.0}),
                                make_chart_fn(GroupChart::SO12_CONJ, {std::nullopt, ChartFactor{0.0, 1.0, 1.0}})};
    const TraceResult so12_res = ctx.stage("so12 compact", [&] { return trace_compact(so12, phi3d, q, pol); });

    ctx.report.results["so2_orbit_form"] = trace_json(eq1);
    ctx.report.results["so2_compact"] = trace_json(cmp);
    ctx.report.results["so12_timelike_compact"] = trace_json(so12_res);
    ctx.table("so2_orbit_form", eq1.table);
    ctx.table("so2_compact", cmp.table);
    ctx.table("so12_timelike_compact", so12_res.table);

    ctx.check("SO(2) orbit form converges", eq1.converged());
    ctx.check("SO(2) compact form converges", cmp.converged());
    ctx.check("SO0(1,2) timelike compact form converges", so12_res.converged());
    if (eq1.converged() && cmp.converged()) {
        const double scale = std::max(std::abs(cmp.value()), pol.rel_err_floor);
        const double errs = std::get<Converged>(eq1.verdict).err + std::get<Converged>(cmp.verdict).err;
        ctx.check("SO(2) orbit and compact forms agree", std::abs(eq1.value() - cmp.value()) / scale, "<=",
                  c.agreement_rtol + errs / scale);
    }
}

// ---------------------------------------------------------------- R^3 x SO0(1,2)

struct So12Params {
    std::vector<double> s, alpha;
    bool brute_force = true;
    Eigen::VectorXd phi1_center;
    double phi1_radius = 1.0;
    double phi2_radius = 1.5;
    double agreement_rtol = 0.02;
};

So12Params read_so12(const json& p) {
    ObjectReader r(p, "params");
    So12Params s;
    s.s = read_list(r, "s", -50.0, 50.0, 16, "params");
    s.alpha = read_list(r, "alpha", 1e-2, 50.0, 16, "params");
    s.brute_force = r.boolean("brute_force");
    s.phi1_center = read_vec(r, "phi1_center", 3, "params");
    s.phi1_radius = r.number("phi1_radius", 1e-2, 1e2);
    s.phi2_radius = r.number("phi2_radius", 1e-2, 1e2);
    s.agreement_rtol = r.number("agreement_rtol", 0.0, 1.0);
    r.finish();
    return s;
}

void run_so12(ScenarioContext& ctx) {
    const So12Params s = read_so12(ctx.cfg.params);
    const SeparableTestFn phi{single(BumpND{s.phi1_center, s.phi1_radius, 1.0}),
                              make_chart_fn(GroupChart::SO12_CONJ, {std::nullopt, ChartFactor{0.0, s.phi2_radius, 1.0}})};
    So12TraceOptions opt;
    opt.brute_force = s.brute_force;
    json out = json::array();
    for (double sv : s.s) {
        for (double a : s.alpha) {
            const std::string tag = "s=" + fmt_num(sv) + " alpha=" + fmt_num(a);
            const TraceResult res = ctx.stage("so12 " + tag, [&] { return trace_r3_so12(sv, a, phi, ctx.cfg.quadrature, opt); });
            json row = trace_json(res);
            row["s"] = sv;
            row["alpha"] = a;
            out.push_back(row);
            ctx.table("so12_s" + fmt_num(sv) + "_alpha" + fmt_num(a), res.table);
            ctx.check(tag + " converges", res.converged());
            if (!res.converged()) continue;
            const cplx v = res.value();
            ctx.check(tag + " |trace| within pi max|D_x phi|", std::abs(v), "<=", res.diagnostic("bound"));
            if (s.brute_force) {
                const cplx bf(res.diagnostic("brute_force_re"), res.diagnostic("brute_force_im"));
                ctx.check(tag + " regularized vs brute force", std::abs(v - bf) / std::max(std::abs(v), ctx.cfg.policy.rel_err_floor),
                          "<=", s.agreement_rtol);
            }
        }
    }
    ctx.report.results["grid"] = out;
}

// ---------------------------------------------------------------- nilpotent orbit of SL(2,R)

struct NilpotentParams {
    Eigen::VectorXd phi1_center;
    double phi1_radius = 1.0;
    double t_radius = 0.5;
    double x_radius = 1.0;
    double cancel_ratio = 0.5;
    double slope_rtol = 0.05;
};

NilpotentParams read_nilpotent(const json& p) {
    ObjectReader r(p, "params");
    NilpotentParams n;
    n.phi1_center = read_vec(r, "phi1_center", 3, "params");
    n.phi1_radius = r.number("phi1_radius", 1e-2, 1e2);
    n.t_radius = r.number("t_radius", 1e-2, 1e2);
    n.x_radius = r.number("x_radius", 1e-2, 1e2);
    n.cancel_ratio = r.number("cancel_ratio", 0.05, 0.95);
    n.slope_rtol = r.number("slope_rtol", 0.0, 1.0);
    r.finish();
    return n;
}

void run_nilpotent(ScenarioContext& ctx) {
    const NilpotentParams n = read_nilpotent(ctx.cfg.params);
    const GroupChartFn phi2 =
        make_chart_fn(GroupChart::SL2_KAN, {std::nullopt, ChartFactor{0.0, n.t_radius, 1.0}, ChartFactor{0.0, n.x_radius, 1.0}});
    const BumpND base{n.phi1_center, n.phi1_radius, 1.0};
    const double k = n.cancel_ratio;
    const BumpSum cancelled = single(base) + single(BumpND{n.phi1_center, n.phi1_radius * k, -1.0 / (k * k * k)});

    const TraceResult div = ctx.stage("nilpotent", [&] {
        return nilpotent_divergence_sl2({single(base), phi2}, *ctx.cfg.schedule, ctx.cfg.quadrature, ctx.cfg.policy);
    });
    const TraceResult conv = ctx.stage("nilpotent cancelled", [&] {
        return nilpotent_divergence_sl2({cancelled, phi2}, *ctx.cfg.schedule, ctx.cfg.quadrature, ctx.cfg.policy);
    });
    const double expected = div.diagnostic("phi1_hat_0") * div.diagnostic("g0_integral");
    json d = trace_json(div);
    d["expected_slope"] = expected;
    ctx.report.results["divergent"] = d;
    ctx.report.results["moment_cancelled"] = trace_json(conv);
    ctx.table("nilpotent", div.table);
    ctx.table("nilpotent_cancelled", conv.table);
    log_divergence_checks(ctx, "nilpotent orbit", div, expected, n.slope_rtol);
    ctx.check("moment-cancelled phi1 converges", conv.converged());
}

// ---------------------------------------------------------------- SL(2,R) test functions

struct Sl2FnSpec {
    Eigen::VectorXd phi1_center;
    double phi1_radius = 1.0;
    double trace_center = 2.0;
    double trace_radius = 5.0;
    double omega_radius = 40.0;
};

Sl2FnSpec read_sl2_fn(const json& j, const std::string& where) {
    ObjectReader r(j, where);
    Sl2FnSpec s;
    s.phi1_center = read_vec(r, "phi1_center", 3, where);
    s.phi1_radius = r.number("phi1_radius", 1e-2, 10.0);
    s.trace_center = r.number("trace_center", -1e2, 1e2);
    s.trace_radius = r.number("trace_radius", 1e-2, 1e2);
    s.omega_radius = r.number("omega_radius", 1e-2, 1e3);
    r.finish();
    return s;
}

SeparableTestFn sl2_fn(const Sl2FnSpec& s) {
    return {single(BumpND{s.phi1_center, s.phi1_radius, 1.0}),
            make_chart_fn(GroupChart::SL2_CONJ, {ChartFactor{s.trace_center, s.trace_radius, 1.0},
                                                 ChartFactor{0.0, s.omega_radius, 1.0}})};
}

SeparableTestFn checked_sl2_fn(const Sl2FnSpec& s, const std::string& where) {
    SeparableTestFn f = sl2_fn(s);
    try {
        require_k_invariant(f);
    } catch (const Error& e) {
        throw ConfigError(where + ": " + e.what());
    }
    return f;
}

json sl2_fn_json(const Sl2FnSpec& s) {
    return {{"phi1_center", vec_json(s.phi1_center)},
            {"phi1_radius", s.phi1_radius},
            {"trace_center", s.trace_center},
            {"trace_radius", s.trace_radius},
            {"omega_radius", s.omega_radius}};
}

// ---------------------------------------------------------------- torus traces

struct Eq10Params {
    double u = 0.5;
    double v = 0.5;
    Sl2FnSpec fn;
    double rtol = 0.03;
    bool doubling = true;
};

Eq10Params read_eq10(const json& p) {
    ObjectReader r(p, "params");
    Eq10Params e;
    e.u = r.number("u", -20.0, 20.0);
    e.v = r.number("v", -20.0, 20.0);
    if (e.u == 0.0 || e.v == 0.0) throw ConfigError("params: u and v must be regular (nonzero)");
    e.fn = read_sl2_fn(r.raw("function"), "params.function");
    e.rtol = r.number("rtol", 0.0, 1.0);
    e.doubling = r.boolean("doubling");
    r.finish();
    checked_sl2_fn(e.fn, "params.function");
    return e;
}

void run_eq10(ScenarioContext& ctx) {
    const Eq10Params e = read_eq10(ctx.cfg.params);
    const SeparableTestFn phi = sl2_fn(e.fn);
    const Truncation base = ctx.cfg.truncation;
    Truncation doubled = base;
    doubled.n_max *= 2;
    doubled.s_max *= 2.0;

    struct Side {
        std::string name;
        TorusDescriptor torus;
        CartanElement h;
        double cutoff_base, cutoff_doubled;
    };
    const std::vector<Side> sides{{"A", split_torus(), cartan_u(e.u), base.s_max, doubled.s_max},
                                  {"B", compact_torus(), cartan_v(e.v), double(base.n_max), double(doubled.n_max)}};
    json out = json::object();
    for (const Side& s : sides) {
        auto run_at = [&](const Truncation& tr) {
            return ctx.stage("eq10 " + s.name + " cutoff " + fmt_num(s.name == "A" ? tr.s_max : tr.n_max), [&] {
                return eq10_check(s.torus, s.h, phi, tr, ctx.cfg.torus_quadrature, ctx.cfg.policy);
            });
        };
        const Eq10Result r0 = run_at(base);
        auto rel = [&](const Eq10Result& r) {
            return std::abs(r.lhs - r.rhs) / std::max(std::abs(r.lhs), ctx.cfg.policy.rel_err_floor);
        };
        auto entry = [&](const Eq10Result& r, double cutoff) {
            return json{{"cutoff", cutoff}, {"lhs", r.lhs},      {"rhs", r.rhs},   {"lhs_imag", r.lhs_imag},
                        {"rhs_imag", r.rhs_imag}, {"rel_err", rel(r)}, {"tail_estimate", r.tail_estimate}};
        };
        json side;
        side["parameter"] = s.h.param;
        side["base"] = entry(r0, s.cutoff_base);
        std::vector<TraceRow> rows{{s.cutoff_base, cplx(r0.rhs, r0.rhs_imag), r0.tail_estimate}};
        const std::string torus_name = s.name == "A" ? "split torus" : "compact torus";
        ctx.check(torus_name + " |lhs - rhs| / |lhs|", rel(r0), "<=", e.rtol);
        if (e.doubling) {
            const Eq10Result r1 = run_at(doubled);
            side["doubled"] = entry(r1, s.cutoff_doubled);
            rows.push_back({s.cutoff_doubled, cplx(r1.rhs, r1.rhs_imag), r1.tail_estimate});
            ctx.check(torus_name + " discrepancy shrinks on doubling", rel(r1), "<=", rel(r0));
        }
        out[s.name] = side;
        ctx.table("eq10_" + s.name, rows);
    }
    ctx.report.results["function"] = sl2_fn_json(e.fn);
    ctx.report.results["tori"] = out;
}

// ---------------------------------------------------------------- Weyl integration

struct WeylParams {
    std::vector<BumpSum> family;
    double residual_max = 0.01;
};

WeylParams read_weyl(const json& p) {
    ObjectReader r(p, "params");
    WeylParams w;
    const json& fam = read_array(r, "family", 32, "params");
    if (fam.size() < 3) throw ConfigError("params.family: at least three functions");
    for (std::size_t i = 0; i < fam.size(); ++i) {
        const std::string where = "params.family[" + std::to_string(i) + "]";
        ObjectReader f(fam[i], where);
        const Eigen::VectorXd c = read_vec(f, "center", 3, where);
        const double radius = f.number("radius", 1e-2, 10.0);
        f.finish();
        w.family.push_back(single(BumpND{c, radius, 1.0}));
    }
    w.residual_max = r.number("residual_max", 0.0, 1.0);
    r.finish();
    return w;
}

json fit_json(const WeylFit& f) {
    return {{"p_a", f.p_a}, {"p_b", f.p_b}, {"c_a", f.c_a}, {"c_b", f.c_b}, {"residual", f.residual}, {"condition", f.condition}};
}

std::string exponent_name(const WeylFit& f) {
    if (f.p_a == 2 && f.p_b == 2) return "quadratic |eta|";
    if (f.p_a == 1 && f.p_b == 1) return "linear";
    return "mixed";
}

void run_weyl(ScenarioContext& ctx) {
    const WeylParams w = read_weyl(ctx.cfg.params);
    const WeylReport rep = ctx.stage("weyl fit", [&] { return weyl_check(w.family, ctx.cfg.torus_quadrature, ctx.cfg.policy); });
    json rows = json::array();
    for (const WeylRow& r : rep.rows) {
        rows.push_back({{"integral", r.lhs}, {"split_moments", r.split}, {"compact_moments", r.compact}});
    }
    json fits = json::array();
    for (const WeylFit& f : rep.fits) fits.push_back(fit_json(f));
    ctx.report.results["rows"] = rows;
    ctx.report.results["fits"] = fits;
    ctx.report.results["best"] = fit_json(rep.best);
    ctx.report.results["winning_exponent"] = exponent_name(rep.best);
    ctx.report.results["eta_prediction"] = fit_json(rep.eta_prediction);
    ctx.report.results["linear_weight_prediction"] = fit_json(rep.plancherel_prediction);
    ctx.check("Weyl fit residual / max |integral|", rep.best.residual, "<", w.residual_max);
    ctx.check("Weyl fit condition number", rep.best.condition, "<", ctx.cfg.policy.fit_condition_max);
}

// ---------------------------------------------------------------- Plancherel

struct PlancherelParams {
    std::vector<Sl2FnSpec> functions;
    Sl2FnSpec null_case;
    double rtol = 0.02;
    double null_rtol = 0.02;
};

PlancherelParams read_plancherel(const json& p) {
    ObjectReader r(p, "params");
    PlancherelParams pp;
    const json& fns = read_array(r, "functions", 16, "params");
    for (std::size_t i = 0; i < fns.size(); ++i) {
        const std::string where = "params.functions[" + std::to_string(i) + "]";
        pp.functions.push_back(read_sl2_fn(fns[i], where));
        const SeparableTestFn f = checked_sl2_fn(pp.functions.back(), where);
        if (f.eval(Eigen::Vector3d::Zero(), identity(Family::SL2R)) == 0.0) {
            throw ConfigError(where + ": the function vanishes at (0, e)");
        }
    }
    pp.null_case = read_sl2_fn(r.raw("null_case"), "params.null_case");
    const SeparableTestFn nf = checked_sl2_fn(pp.null_case, "params.null_case");
    if (nf.eval(Eigen::Vector3d::Zero(), identity(Family::SL2R)) != 0.0) {
        throw ConfigError("params.null_case: the support must avoid (0, e)");
    }
    pp.rtol = r.number("rtol", 0.0, 1.0);
    pp.null_rtol = r.number("null_rtol", 0.0, 1.0);
    r.finish();
    return pp;
}

json plancherel_json(const PlancherelReport& r) {
    return {{"lhs", r.lhs},
            {"rhs", r.rhs_total},
            {"rhs_split", r.rhs_a},
            {"rhs_compact", r.rhs_b},
            {"rhs_imag", r.rhs_imag},
            {"rel_err", r.rel_err},
            {"weights",
             {{"p_a", r.density_fit.p_a}, {"c_a", r.density_fit.c_a}, {"p_b", r.density_fit.p_b}, {"c_b", r.density_fit.c_b}}}};
}

void run_plancherel(ScenarioContext& ctx) {
    const PlancherelParams pp = read_plancherel(ctx.cfg.params);
    const TorusQuadrature& tq = ctx.cfg.torus_quadrature;
    const WeylReport weyl = ctx.stage("weyl fit", [&] { return weyl_check(default_weyl_family(), tq, ctx.cfg.policy); });
    ctx.report.results["density_fit"] = fit_json(weyl.best);

    json out = json::array();
    double reference = 0.0;
    for (std::size_t i = 0; i < pp.functions.size(); ++i) {
        const PlancherelPair pair = ctx.stage("plancherel function " + std::to_string(i), [&] {
            return plancherel_verify_both(sl2_fn(pp.functions[i]), ctx.cfg.truncation, weyl.best, tq, ctx.cfg.policy);
        });
        if (i == 0) reference = std::abs(pair.fitted.rhs_total);
        out.push_back({{"function", sl2_fn_json(pp.functions[i])},
                       {"fitted_weights", plancherel_json(pair.fitted)},
                       {"paper_weights", plancherel_json(pair.paper)}});
        ctx.check("function " + std::to_string(i) + " fitted-weight rel_err", pair.fitted.rel_err, "<=", pp.rtol);
    }
    ctx.report.results["functions"] = out;

    const PlancherelPair null_pair = ctx.stage("plancherel null case", [&] {
        return plancherel_verify_both(sl2_fn(pp.null_case), ctx.cfg.truncation, weyl.best, tq, ctx.cfg.policy);
    });
    const double residual = std::abs(null_pair.fitted.rhs_total) / std::max(reference, ctx.cfg.policy.rel_err_floor);
    ctx.report.results["null_case"] = {{"function", sl2_fn_json(pp.null_case)},
                                       {"fitted_weights", plancherel_json(null_pair.fitted)},
                                       {"paper_weights", plancherel_json(null_pair.paper)},
                                       {"reference_rhs", reference},
                                       {"rhs_residual", residual}};
    ctx.check("null case |rhs| / reference rhs", residual, "<=", pp.null_rtol);
}

// ---------------------------------------------------------------- registry

json sl2_fn_default(const std::vector<double>& c, double r, double tc, double tr, double om) {
    return {{"phi1_center", c}, {"phi1_radius", r}, {"trace_center", tc}, {"trace_radius", tr}, {"omega_radius", om}};
}

std::vector<Scenario> build_registry() {
    std::vector<Scenario> s;
    auto no_extra = [](auto reader) { return [reader](const json& p, const RunConfig&) { reader(p); }; };

    s.push_back({"sec2-mackey-data", "orbits",
                 "Mackey data for N x| H: character, orbit class, stabilizer and induced-representation descriptor, "
                 "with stabilizer and trajectory invariance checks",
                 {{"cases",
                   {{{"family", "SO12"}, {"xi", {1, 0, 0}}, {"expect_label", "TimelikeUpper"}, {"expect_compact", true}},
                    {{"family", "SO12"}, {"xi", {-2, 0, 0}}, {"expect_label", "TimelikeLower"}, {"expect_compact", true}},
                    {{"family", "SO12"}, {"xi", {0, 0, 1}}, {"expect_label", "Spacelike"}, {"expect_compact", false}},
                    {{"family", "SO12"}, {"xi", {1, 1, 0}}, {"expect_label", "ConeUpper"}},
                    {{"family", "SO12"}, {"xi", {0, 0, 0}}, {"expect_label", "Zero"}},
                    {{"family", "SO2"}, {"xi", {1, 0}}, {"expect_label", "Circle"}, {"expect_compact", true}},
                    {{"family", "O11"}, {"xi", {1, 1}}, {"expect_label", "ConeRay"}},
                    {{"family", "HEIS3"}, {"xi", {1, 0.5, 0.2}}},
                    {{"family", "UNIP4"}, {"xi", {0.3, 1.0, 0.2, 0.4}}}}},
                  {"trajectory_samples", 100},
                  {"chart_samples", 16},
                  {"h_scale", 1.0}},
                 false, {},
                 [](const json& p, const RunConfig& cfg) {
                     for (const OrbitCase& c : read_mackey(p).cases) {
                         make_induced_rep(make_semidirect(c.family), c.xi, StabRep::trivial(), cfg.policy);
                     }
                 },
                 run_mackey});

    s.push_back({"sec4-divergence", "trace",
                 "log-divergent trace on R^n x| SL(n,R), n = 2, 3: partial integrals of phi1-hat(lambda e1) d lambda/|lambda| "
                 "grow like 2 phi1-hat(0) (M0U factor) log R",
                 {{"dims", {2, 3}},
                  {"phi1_center_2d", {0.2, 0.1}},
                  {"phi1_center_3d", {0.2, 0.1, 0.3}},
                  {"phi1_radius", 1.0},
                  {"lambda_center", 1.0},
                  {"lambda_radius", 0.5},
                  {"slope_rtol", 0.05}},
                 true, CutoffSchedule::decades(1, 4), no_extra(read_sln), run_sln});

    s.push_back({"sec6-tempered", "tempered",
                 "temperedness of invariant orbit measures: integrals of (1+|xi|^2)^-k over eps <= |xi| <= R for "
                 "Heisenberg, 4x4 unipotent, O(1,1) cone ray, SO0(1,2) and SO(2) orbits",
                 {{"cases",
                   {{{"family", "HEIS3"}, {"xi", {1, 0.5, 0.2}}, {"expect", "Tempered"}},
                    {{"family", "UNIP4"}, {"xi", {0.3, 1.0, 0.2, 0.4}}, {"expect", "Tempered"}},
                    {{"family", "O11"}, {"xi", {1, 1}}, {"expect", "NotTempered"}},
                    {{"family", "SO12"}, {"xi", {0, 0, 1}}, {"expect", "Tempered"}},
                    {{"family", "SO2"}, {"xi", {1, 0}}, {"expect", "Tempered"}}}},
                  {"k_max", 3}},
                 true, CutoffSchedule{{1e3, 1e5, 1e7, 1e9}, {1e-3, 1e-5, 1e-7, 1e-9}},
                 [](const json& p, const RunConfig& cfg) {
                     for (const TemperedCase& c : read_tempered(p).cases) {
                         const SemidirectDescriptor sd = make_semidirect(c.family);
                         orbit_measure(sd, classify_orbit(sd, character_point(sd, c.xi), cfg.policy));
                     }
                 },
                 run_tempered});

    s.push_back({"sec7-compact", "trace",
                 "finite traces for compact stabilizers: SO(2) circle orbits (orbit form against compact form) and "
                 "the SO0(1,2) timelike hyperboloid",
                 {{"so2_xi", {1, 0}}, {"so12_alpha", 1.0}, {"agreement_rtol", 1e-6}},
                 false, {}, no_extra(read_compact), run_compact});

    s.push_back({"sec8-trace", "trace",
                 "trace of pi_{s,alpha} on R^3 x| SO0(1,2) through the D_x-regularized (z, t) integral, with the "
                 "bound pi max|D_x phi| and an unregularized cross-check",
                 {{"s", {0, 1, 2}},
                  {"alpha", {0.5, 1, 2}},
                  {"brute_force", true},
                  {"phi1_center", {0.5, 0, 0}},
                  {"phi1_radius", 1.0},
                  {"phi2_radius", 1.5},
                  {"agreement_rtol", 0.02}},
                 false, {}, no_extra(read_so12), run_so12});

    s.push_back({"sec9-nilpotent", "trace",
                 "nilpotent orbit of SL(2,R) in sl(2,R): integral of phi1-hat(mu E) d mu/mu diverges like "
                 "phi1-hat(0) (G0 factor) log R; a moment-cancelled phi1 converges",
                 {{"phi1_center", {0.2, 0.1, 0.3}},
                  {"phi1_radius", 1.0},
                  {"t_radius", 0.5},
                  {"x_radius", 1.0},
                  {"cancel_ratio", 0.5},
                  {"slope_rtol", 0.05}},
                 true, CutoffSchedule::decades(1, 4), no_extra(read_nilpotent), run_nilpotent});

    s.push_back({"sec11-eq10", "plancherel",
                 "torus traces of sl(2,R) x| SL(2,R): the G/T integral of phi-hat(Ad(g) H) against the dual-measure "
                 "integral of pi^A and pi^B traces, with truncation doubling",
                 {{"u", 0.5},
                  {"v", 0.5},
                  {"function", sl2_fn_default({0, 0, 0}, 1.0, 2.0, 5.0, 40.0)},
                  {"rtol", 0.03},
                  {"doubling", true}},
                 false, {}, no_extra(read_eq10), run_eq10});

    s.push_back({"sec11-weyl", "weyl",
                 "Weyl integration on sl(2,R): fit of int f against the split and compact orbital integrals with "
                 "weights |u|^p and |v|^p",
                 {{"family",
                   {{{"center", {0.0, 0.0, 0.0}}, {"radius", 1.0}},
                    {{"center", {1.5, 0.0, 0.0}}, {"radius", 1.0}},
                    {{"center", {0.0, 0.0, 2.0}}, {"radius", 1.0}},
                    {{"center", {0.0, 0.0, -1.5}}, {"radius", 0.8}},
                    {{"center", {0.5, 0.5, 1.0}}, {"radius", 1.2}},
                    {{"center", {1.0, -1.0, 0.5}}, {"radius", 0.7}}}},
                  {"residual_max", 0.01}},
                 false, {}, no_extra(read_weyl), run_weyl});

    s.push_back({"sec12-plancherel", "plancherel",
                 "Plancherel identity for sl(2,R) x| SL(2,R): phi(0, e) against the weighted sum of pi^A and pi^B "
                 "traces, fitted and linear density weights, plus a null case",
                 {{"functions",
                   {sl2_fn_default({0, 0, 0}, 1.0, 2.0, 5.0, 40.0), sl2_fn_default({0, 0, 0}, 0.8, 2.0, 5.0, 20.0),
                    sl2_fn_default({0, 0, 0}, 1.3, 1.5, 4.0, 40.0)}},
                  {"null_case", sl2_fn_default({0, 0, 3}, 1.0, 2.0, 5.0, 40.0)},
                  {"rtol", 0.02},
                  {"null_rtol", 0.02}},
                 false, {}, no_extra(read_plancherel), run_plancherel});
    return s;
}

}  // namespace

const std::vector<Scenario>& scenarios() {
    static const std::vector<Scenario> registry = build_registry();
    return registry;
}

const Scenario* find_scenario(const std::string& name) {
    for (const Scenario& s : scenarios()) {
        if (s.name == name) return &s;
    }
    return nullptr;
}

std::vector<std::string> command_names() { return {"orbits", "tempered", "trace", "weyl", "plancherel", "demo"}; }

}  // namespace tracekit::cli
