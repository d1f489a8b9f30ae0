// Acceptance driver: one PASS/FAIL line per criterion, tolerances fixed below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "tracekit/cli/config.hpp"
#include "tracekit/cli/report.hpp"
#include "tracekit/cli/runner.hpp"
#include "tracekit/groups/decompositions.hpp"
#include "tracekit/groups/lie.hpp"
#include "tracekit/groups/random.hpp"
#include "tracekit/testfn/bump.hpp"
#include "tracekit/testfn/fourier.hpp"
#include "tracekit/util/parallel.hpp"
#include "../support/oracles.hpp"

using namespace tracekit;
using namespace tracekit::cli;
using std::numbers::pi;

namespace {

constexpr double kIwasawaTol = 1e-10;
constexpr double kKuaTol = 1e-9;
constexpr double kFourierRtol = 1e-4;
constexpr double kFitR2 = 0.999;
constexpr double kSlopeRtol = 0.05;
constexpr double kBruteRtol = 0.02;
constexpr double kWeylResidual = 0.01;
constexpr double kWeylCondition = 1e3;
constexpr double kEq10Rtol = 0.03;
constexpr double kPlancherelRtol = 0.02;
constexpr double kNullRtol = 0.02;
constexpr int kParallelThreads = 4;

struct Outcome {
    bool pass = true;
    std::string detail;
    json payload;
};

struct Criterion {
    int id;
    double limit_s;
    std::function<Outcome()> run;
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

void expect(Outcome& o, bool ok, const std::string& what) {
    if (!ok) {
        o.pass = false;
        o.detail += " [failed: " + what + "]";
    }
}

double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

RunOutcome scenario(const std::string& name, Outcome& o) {
    RunOutcome r = run(default_config(name));
    for (const Check& c : r.report.checks) expect(o, c.passed, name + ": " + c.name);
    expect(o, r.exit_code == kSuccess, name + " exit code " + std::to_string(r.exit_code) + " " + r.diagnostic);
    o.payload = to_json(r.report);
    return r;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

Outcome decompositions() {
    Outcome o;
    std::mt19937_64 rng(20261014);
    double worst = 0.0;
    for (Family f : {Family::SL2R, Family::SL3R}) {
        for (int i = 0; i < 5000; ++i) {
            const GroupElement g = random_group_element(f, rng, 1.5);
            const IwasawaKAN kan = iwasawa_kan(g);
            worst = std::max(worst, max_abs(kan.k.m * kan.a.m * kan.n.m - g.m) / (1.0 + max_abs(g.m)));
        }
    }
    std::uniform_real_distribution<double> ang(-pi, pi), lin(-2.0, 2.0);
    double worst_kua = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const double th = ang(rng), z = lin(rng), t = lin(rng);
        const GroupElement h = so12_rotation(th) * so12_u(z) * so12_a(t);
        const IwasawaKUA d = iwasawa_so12(h);
        worst_kua = std::max({worst_kua, std::abs(d.z - z), std::abs(d.t - t),
                              max_abs((d.k * so12_u(d.z) * so12_a(d.t)).m - h.m)});
    }
    expect(o, worst < kIwasawaTol, "KAN error");
    expect(o, worst_kua < kKuaTol, "KUA error");
    o.detail = "KAN max err " + num(worst) + " < " + num(kIwasawaTol) + ", KUA max err " + num(worst_kua) + " < " +
               num(kKuaTol) + o.detail;
    o.payload = {{"kan_max_err", worst}, {"kua_max_err", worst_kua}};
    return o;
}

double sinc(double x) { return std::abs(x) < 1e-12 ? 1.0 : std::sin(x) / x; }

Outcome fourier_suite() {
    Outcome o;
    double worst_inv = 0.0, worst_l2 = 0.0, worst_shift = 0.0;
    for (int d : {1, 3}) {
        for (double radius : {0.5, 1.0, 2.0}) {
            const Eigen::VectorXd zero = Eigen::VectorXd::Zero(d);
            const BumpSum f = single(BumpND{zero, radius, 1.0});
            const double cut = decay_radius(f, 1e-9);
            const int n = 40000;
            std::vector<double> ks(n + 1), fk(n + 1);
            for (int i = 0; i <= n; ++i) {
                ks[i] = cut * i / n;
                fk[i] = std::pow(radius, d) * radial_profile_transform(d, radius * ks[i]);
            }
            auto integrate = [&](auto weight) {
                double s = 0.0;
                for (int i = 0; i <= n; ++i) s += (i == 0 || i == n ? 1.0 : i % 2 ? 4.0 : 2.0) * weight(i);
                return s * (cut / n) / 3.0;
            };
            const double sphere = d == 1 ? 2.0 : 4 * pi;
            const double l2 = integrate([&](int i) { return sphere * std::pow(ks[i], d - 1) * fk[i] * fk[i]; });
            worst_l2 = std::max(worst_l2, rel(l2, oracle::bump_l2(d, radius)));
            for (int s = 0; s < 10; ++s) {
                const double r = 0.85 * radius * s / 9.0;
                const double back = integrate([&](int i) {
                    return d == 1 ? 2.0 * fk[i] * std::cos(2 * pi * ks[i] * r)
                                  : 4 * pi * ks[i] * ks[i] * fk[i] * sinc(2 * pi * ks[i] * r);
                });
                worst_inv = std::max(worst_inv, rel(back, oracle::profile(r / radius)));
            }
            // An off-center bump differs from the centered one by a phase.
            Eigen::VectorXd c = Eigen::VectorXd::LinSpaced(d, 0.3, -0.4);
            const BumpND shifted{c, radius, 1.0};
            const Eigen::MatrixXd pairing = Eigen::MatrixXd::Identity(d, d);
            for (int s = 1; s <= 5; ++s) {
                const Eigen::VectorXd xi = Eigen::VectorXd::LinSpaced(d, 0.2 * s, -0.1 * s) / radius;
                const cplx expect_v = std::exp(cplx(0.0, -2 * pi * xi.dot(c))) * std::pow(radius, d) *
                                      radial_profile_transform(d, radius * xi.norm());
                const cplx got = fourier(shifted, xi, pairing, QuadratureSpec{}).value;
                worst_shift = std::max(worst_shift, std::abs(got - expect_v) / std::abs(expect_v));
            }
        }
    }
    expect(o, worst_inv <= kFourierRtol, "inversion");
    expect(o, worst_l2 <= kFourierRtol, "Parseval");
    expect(o, worst_shift <= kFourierRtol, "translation phase");
    o.detail = "inversion rel err " + num(worst_inv) + ", Parseval rel err " + num(worst_l2) + ", shifted rel err " +
               num(worst_shift) + " <= " + num(kFourierRtol) + o.detail;
    o.payload = {{"inversion", worst_inv}, {"parseval", worst_l2}, {"shift", worst_shift}};
    return o;
}

Outcome divergence() {
    Outcome o;
    const RunOutcome r = scenario("sec4-divergence", o);
    const json& p = r.report.parameters["params"];
    const std::vector<double> sched = r.report.parameters["schedule"]["r"].get<std::vector<double>>();
    expect(o, sched == std::vector<double>{10, 100, 1000, 10000}, "schedule is 10..1e4");
    const double phi1_r = p["phi1_radius"].get<double>();
    const double lam_c = p["lambda_center"].get<double>(), lam_r = p["lambda_radius"].get<double>();
    const double ip = oracle::profile_integral();
    const double lam = oracle::profile((1.0 - lam_c) / lam_r);
    std::string d;
    int seen = 0;
    for (const json& t : r.report.results["traces"]) {
        const int n = t["n"].get<int>();
        ++seen;
        expect(o, t["verdict"] == "LogDivergent", "n=" + std::to_string(n) + " verdict");
        if (!t.contains("slope")) continue;
        const double m0u = n == 2 ? lam * ip
                                  : lam * 0.5 * oracle::simpson([](double s) { return oracle::profile(s) * std::exp(s); }, -1, 1) *
                                        ip * ip * ip;
        const double expected = 2.0 * oracle::bump_mass(n, phi1_r) * m0u;
        const double err = rel(t["slope"].get<double>(), expected), r2 = t["fit_r2"].get<double>();
        expect(o, r2 >= kFitR2, "n=" + std::to_string(n) + " R^2");
        expect(o, err <= kSlopeRtol, "n=" + std::to_string(n) + " slope");
        d += (d.empty() ? "" : ", ") + std::string("n=") + std::to_string(n) + " R^2 " + num(r2) + " slope rel err " + num(err);
    }
    expect(o, seen == 2, "both dimensions reported");
    o.detail = d + " (R^2 >= " + num(kFitR2) + ", slope <= " + num(kSlopeRtol) + ")" + o.detail;
    return o;
}

Outcome tempered() {
    Outcome o;
    const RunOutcome r = scenario("sec6-tempered", o);
    std::string d;
    bool o11 = false;
    for (const json& c : r.report.results["cases"]) {
        const std::string fam = c["family"], v = c["verdict"];
        if (fam == "HEIS3" || fam == "UNIP4") {
            expect(o, v.rfind("Tempered", 0) == 0, fam + " tempered");
            d += fam + " " + v + ", ";
        }
        if (fam != "O11") continue;
        o11 = true;
        expect(o, v == "NotTempered", "O11 not tempered");
        double min_r2 = 1.0, worst = 0.0;
        for (const json& e : c["evidence"]) {
            min_r2 = std::min(min_r2, e["fit_r2"].get<double>());
            const int k = e["k"];
            for (size_t i = 0; i < e["partial"].size(); ++i) {
                const double lo = std::log(e["eps"][i].get<double>() / std::sqrt(2.0));
                const double hi = std::log(e["cutoff"][i].get<double>() / std::sqrt(2.0));
                const double ref =
                    oracle::simpson([k](double u) { return std::pow(1.0 + 2.0 * std::exp(2.0 * u), -k); }, lo, hi, 200000);
                worst = std::max(worst, rel(e["partial"][i].get<double>(), ref));
            }
        }
        expect(o, min_r2 >= kFitR2, "O11 R^2");
        expect(o, worst <= 1e-6, "O11 partials vs oracle");
        d += "O11 " + v + " R^2 " + num(min_r2) + " >= " + num(kFitR2) + ", partials vs oracle " + num(worst);
    }
    expect(o, o11, "O11 case present");
    o.detail = d + o.detail;
    return o;
}

Outcome so12_grid() {
    Outcome o;
    const RunOutcome r = scenario("sec8-trace", o);
    const json& p = r.report.parameters["params"];
    expect(o, p["phi1_radius"].get<double>() == 1.0, "unit phi1 radius for the D_x oracle");
    double peak = 0.0;
    for (int i = 1; i < 20000; ++i) {
        const double rho = i / 20000.0, h = 1e-5;
        const double d1 = (oracle::profile(rho + h) - oracle::profile(rho - h)) / (2 * h);
        const double d2 = oracle::profile_d2_fd(rho, h);
        peak = std::max({peak, std::abs(2 * d1 / rho), std::abs(d2 + d1 / rho)});
    }
    int cells = 0;
    double worst_ratio = 0.0, worst_bf = 0.0, worst_dx = 0.0;
    for (const json& g : r.report.results["grid"]) {
        ++cells;
        expect(o, g["verdict"] == "Converged", "converged");
        if (!g.contains("value")) continue;
        const cplx v(g["value"][0].get<double>(), g["value"][1].get<double>());
        const json& dg = g["diagnostics"];
        const cplx bf(dg["brute_force_re"].get<double>(), dg["brute_force_im"].get<double>());
        worst_ratio = std::max(worst_ratio, std::abs(v) / dg["bound"].get<double>());
        worst_bf = std::max(worst_bf, std::abs(v - bf) / std::abs(v));
        const double alpha = g["alpha"].get<double>();
        const double dx = peak / (2 * pi * pi * alpha * alpha) * std::exp(-1.0);
        worst_dx = std::max(worst_dx, std::abs(dg["max_Dx"].get<double>() - dx) / dx);
    }
    expect(o, cells == 9, "3x3 grid");
    expect(o, worst_ratio <= 1.0, "bound");
    expect(o, worst_bf <= kBruteRtol, "brute force");
    expect(o, worst_dx <= 0.05, "max|D_x phi1| vs oracle");
    o.detail = std::to_string(cells) + " cells converged, max |tr|/bound " + num(worst_ratio) + " <= 1, brute force rel err " +
               num(worst_bf) + " <= " + num(kBruteRtol) + ", max|D_x phi1| vs oracle " + num(worst_dx) + o.detail;
    return o;
}

Outcome nilpotent() {
    Outcome o;
    const RunOutcome r = scenario("sec9-nilpotent", o);
    const json& p = r.report.parameters["params"];
    const json& dv = r.report.results["divergent"];
    expect(o, dv["verdict"] == "LogDivergent", "verdict");
    const double t0 = oracle::profile(0.0), xr = p["x_radius"].get<double>();
    const double g0 = 2.0 * t0 * xr * oracle::profile_integral();
    const double expected = oracle::bump_mass(3, p["phi1_radius"].get<double>()) * g0;
    double err = 1.0;
    if (dv.contains("slope")) err = rel(dv["slope"].get<double>(), expected);
    expect(o, err <= kSlopeRtol, "slope");
    const std::string cv = r.report.results["moment_cancelled"]["verdict"];
    expect(o, cv == "Converged", "cancelled converges");
    o.detail = "slope rel err " + num(err) + " <= " + num(kSlopeRtol) + ", cancelled phi1 " + cv + o.detail;
    return o;
}

Outcome weyl() {
    Outcome o;
    const RunOutcome r = scenario("sec11-weyl", o);
    const json& res = r.report.results;
    const json& fam = r.report.parameters["params"]["family"];
    expect(o, fam.size() == 6, "six functions");
    double worst_lhs = 0.0;
    for (size_t i = 0; i < fam.size() && i < res["rows"].size(); ++i) {
        const double mass = oracle::bump_mass(3, fam[i]["radius"].get<double>());
        worst_lhs = std::max(worst_lhs, rel(res["rows"][i]["integral"].get<double>(), mass));
    }
    const double resid = res["best"]["residual"], cond = res["best"]["condition"];
    expect(o, resid < kWeylResidual, "residual");
    expect(o, cond < kWeylCondition, "condition");
    expect(o, worst_lhs <= 1e-8, "integrals vs oracle");
    o.detail = "residual " + num(resid) + " < " + num(kWeylResidual) + ", condition " + num(cond) + " < " + num(kWeylCondition) +
               ", winning exponent " + res["winning_exponent"].get<std::string>() + " (p_A " +
               std::to_string(res["best"]["p_a"].get<int>()) + ", p_B " + std::to_string(res["best"]["p_b"].get<int>()) +
               "), integrals vs oracle " + num(worst_lhs) + o.detail;
    return o;
}

Outcome eq10() {
    Outcome o;
    const RunOutcome r = scenario("sec11-eq10", o);
    const json& tr = r.report.parameters["truncation"];
    expect(o, tr["n_max"].get<int>() == 16 && tr["s_max"].get<double>() == 12.0, "N = 16, S = 12");
    std::string d;
    for (const char* side : {"A", "B"}) {
        const json& s = r.report.results["tori"][side];
        const double base = s["base"]["rel_err"], dbl = s["doubled"]["rel_err"];
        expect(o, base <= kEq10Rtol, std::string(side) + " within tolerance");
        expect(o, dbl <= base, std::string(side) + " shrinks");
        d += std::string(side == std::string("A") ? "split" : "compact") + " rel err " + num(base) + " -> " + num(dbl) + ", ";
    }
    o.detail = d + "tolerance " + num(kEq10Rtol) + o.detail;
    return o;
}

Outcome plancherel() {
    Outcome o;
    const RunOutcome r = scenario("sec12-plancherel", o);
    const json& fns = r.report.results["functions"];
    expect(o, fns.size() == 3, "three functions");
    std::string fitted, paper;
    double worst_lhs = 0.0;
    for (const json& f : fns) {
        const json& spec = f["function"];
        const Eigen::Vector3d c(spec["phi1_center"][0].get<double>(), spec["phi1_center"][1].get<double>(),
                                spec["phi1_center"][2].get<double>());
        const double lhs = oracle::profile(c.norm() / spec["phi1_radius"].get<double>()) *
                           oracle::profile((2.0 - spec["trace_center"].get<double>()) / spec["trace_radius"].get<double>()) *
                           oracle::profile(0.0);
        worst_lhs = std::max(worst_lhs, rel(f["fitted_weights"]["lhs"].get<double>(), lhs));
        const double e = f["fitted_weights"]["rel_err"];
        expect(o, e <= kPlancherelRtol, "fitted rel_err");
        fitted += (fitted.empty() ? "" : "/") + num(e);
        paper += (paper.empty() ? "" : "/") + num(f["paper_weights"]["rel_err"].get<double>());
    }
    const double null_res = r.report.results["null_case"]["rhs_residual"];
    expect(o, null_res <= kNullRtol, "null case");
    expect(o, worst_lhs <= 1e-12, "phi(0,e) vs oracle");
    o.detail = "fitted rel err " + fitted + " <= " + num(kPlancherelRtol) + ", null residual " + num(null_res) + " <= " +
               num(kNullRtol) + ", paper-weight rel err " + paper + " (recorded)" + o.detail;
    return o;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{{1, 10, decompositions}, {2, 30, fourier_suite}, {3, 60, divergence},
                                          {4, 30, tempered},       {5, 300, so12_grid},    {6, 60, nilpotent},
                                          {7, 300, weyl},          {8, 600, eq10},         {9, 1800, plancherel}};
    bool all = true;
    std::vector<std::string> serial;
    set_thread_count(1);
    for (const Criterion& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool ok = o.pass && secs < c.limit_s;
        all = all && ok;
        serial.push_back(o.payload.dump());
        std::printf("criterion %d: %s (%s; %.1f s < %.0f s)\n", c.id, ok ? "PASS" : "FAIL", o.detail.c_str(), secs, c.limit_s);
        std::fflush(stdout);
    }

    set_thread_count(kParallelThreads);
    int same = 0;
    std::string differing;
    for (size_t i = 0; i < criteria.size(); ++i) {
        std::string dump;
        try {
            dump = criteria[i].run().payload.dump();
        } catch (const std::exception& e) {
            dump = std::string("exception: ") + e.what();
        }
        if (dump == serial[i]) {
            ++same;
        } else {
            differing += " " + std::to_string(criteria[i].id);
        }
    }
    const bool det = same == static_cast<int>(criteria.size());
    all = all && det;
    std::printf("criterion 10: %s (%d/%zu reports byte-identical at 1 and %d threads%s)\n", det ? "PASS" : "FAIL", same,
                criteria.size(), kParallelThreads, det ? "" : (", differing:" + differing).c_str());
    return all ? 0 : 1;
}
