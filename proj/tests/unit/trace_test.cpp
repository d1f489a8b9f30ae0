#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "tracekit/trace/divergence.hpp"
#include "tracekit/trace/trace.hpp"
#include "tracekit/util/error.hpp"
#include "../support/oracles.hpp"

using namespace tracekit;
using std::numbers::pi;

namespace {

std::vector<TraceRow> rows_of(const std::function<double(double)>& f) {
    std::vector<TraceRow> rows;
    for (double r = 10.0; r <= 1e6; r *= 10.0) rows.push_back({r, cplx(f(r), 0.0), 1e-14});
    return rows;
}

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::InvalidArgument;
}

/// Radial transform of the unit bump on R^d as a function of |xi|.
double radial_oracle(int d, double k) {
    if (d == 2) {
        return oracle::simpson(
            [k](double t) { return 2 * pi * t * oracle::profile(t) * std::cyl_bessel_j(0.0, 2 * pi * k * t); }, 0, 1, 4000);
    }
    return oracle::simpson(
        [k](double t) {
            const double x = 2 * pi * k * t;
            return 4 * pi * t * t * oracle::profile(t) * (x < 1e-12 ? 1.0 : std::sin(x) / x);
        },
        0, 1, 4000);
}

SeparableTestFn sl2_divergent_fn(const BumpSum& phi1) {
    return {phi1, make_chart_fn(GroupChart::SL2_KAM0U, {std::nullopt, ChartFactor{1.0, 0.5, 1.0}, ChartFactor{0.0, 1.0, 1.0}})};
}

const QuadratureSpec kQ{};

}  // namespace

TEST(DivergenceClassify, Examples) {
    const TraceVerdict log = divergence_classify(rows_of([](double r) { return 0.7 * std::log(r) + 0.2; }));
    ASSERT_TRUE(std::holds_alternative<LogDivergent>(log));
    EXPECT_NEAR(std::get<LogDivergent>(log).slope, 0.7, 1e-12);
    EXPECT_NEAR(std::get<LogDivergent>(log).fit_r2, 1.0, 1e-12);
    EXPECT_TRUE(std::holds_alternative<Converged>(divergence_classify(rows_of([](double) { return 1.25; }))));
    EXPECT_TRUE(std::holds_alternative<Inconclusive>(divergence_classify(rows_of([](double r) { return std::sqrt(r); }))));
    std::vector<TraceRow> three = rows_of([](double) { return 1.0; });
    three.resize(3);
    EXPECT_EQ(code_of([&] { divergence_classify(three); }), ErrorCode::TooFewPoints);
}

TEST(CutoffSchedule, Validation) {
    EXPECT_NO_THROW(validate(CutoffSchedule::decades(1, 4)));
    EXPECT_EQ(code_of([] { validate(CutoffSchedule{{1, 2, 3}, {}}); }), ErrorCode::BadSchedule);
    EXPECT_EQ(code_of([] { validate(CutoffSchedule{{1, 3, 2, 4}, {}}); }), ErrorCode::BadSchedule);
    EXPECT_EQ(code_of([] { validate(CutoffSchedule{{1, 2, 3, 4}, {0.1, 0.2, 0.01, 0.001}}); }), ErrorCode::BadSchedule);
}

TEST(TraceRnSln, ZeroTestFunction) {
    const TraceResult r = trace_rn_sln(sl2_divergent_fn(BumpSum{}), 2, CutoffSchedule::decades(1, 4), kQ);
    ASSERT_TRUE(r.converged());
    EXPECT_EQ(r.value(), cplx(0.0, 0.0));
}

TEST(TraceRnSln, PlaneCaseDivergesWithOracleSlope) {
    const BumpSum phi1 = single(BumpND{Eigen::Vector2d(0.2, 0.1), 1.0, 1.0});
    const TraceResult r = trace_rn_sln(sl2_divergent_fn(phi1), 2, CutoffSchedule::decades(1, 4), kQ);
    ASSERT_TRUE(r.log_divergent()) << verdict_name(r.verdict);
    const double m0u = std::exp(-1.0) * oracle::profile_integral();
    EXPECT_NEAR(r.diagnostic("m0u_integral"), m0u, 1e-8);
    const double expect = 2.0 * oracle::bump_mass(2, 1.0) * m0u;
    EXPECT_NEAR(std::get<LogDivergent>(r.verdict).slope, expect, 0.05 * expect);
    for (size_t i = 1; i < r.table.size(); ++i) EXPECT_GE(r.table[i].value.real(), r.table[i - 1].value.real());

    QuadratureSpec fine = kQ;
    fine.nodes *= 2;
    EXPECT_TRUE(trace_rn_sln(sl2_divergent_fn(phi1), 2, CutoffSchedule::decades(1, 4), fine).log_divergent());
}

TEST(TraceRnSln, MomentCancelledConverges) {
    const Eigen::Vector2d c(0.2, 0.1);
    const BumpSum phi1 = single(BumpND{c, 1.0, 1.0}) + single(BumpND{c, 0.5, -4.0});
    const TraceResult r = trace_rn_sln(sl2_divergent_fn(phi1), 2, CutoffSchedule::decades(1, 4), kQ);
    EXPECT_TRUE(r.converged()) << verdict_name(r.verdict);
}

TEST(TraceRnSln, RejectsWrongChart) {
    const SeparableTestFn f{single(BumpND{Eigen::Vector2d::Zero(), 1.0, 1.0}), constant_chart_fn()};
    EXPECT_EQ(code_of([&] { trace_rn_sln(f, 2, CutoffSchedule::decades(1, 4), kQ); }), ErrorCode::UnsupportedChart);
}

TEST(Nilpotent, DivergesAndCancels) {
    const GroupChartFn phi2 =
        make_chart_fn(GroupChart::SL2_KAN, {std::nullopt, ChartFactor{0.0, 0.5, 1.0}, ChartFactor{0.0, 1.0, 1.0}});
    const Eigen::Vector3d c(0.2, 0.1, 0.3);
    const TraceResult div = nilpotent_divergence_sl2({single(BumpND{c, 1.0, 1.0}), phi2}, CutoffSchedule::decades(1, 4), kQ);
    ASSERT_TRUE(div.log_divergent()) << verdict_name(div.verdict);
    const double g0 = 2.0 * std::exp(-1.0) * oracle::profile_integral();
    EXPECT_NEAR(div.diagnostic("g0_integral"), g0, 1e-8);
    const double expect = oracle::bump_mass(3, 1.0) * g0;
    EXPECT_NEAR(std::get<LogDivergent>(div.verdict).slope, expect, 0.05 * expect);

    const BumpSum cancelled = single(BumpND{c, 1.0, 1.0}) + single(BumpND{c, 0.5, -8.0});
    EXPECT_TRUE(nilpotent_divergence_sl2({cancelled, phi2}, CutoffSchedule::decades(1, 4), kQ).converged());
    const TraceResult zero = nilpotent_divergence_sl2({BumpSum{}, phi2}, CutoffSchedule::decades(1, 4), kQ);
    ASSERT_TRUE(zero.converged());
    EXPECT_EQ(zero.value(), cplx(0.0, 0.0));
}

namespace {

InducedRepDescriptor so2_rep() {
    return make_induced_rep(make_semidirect(HFamily::SO2), Eigen::Vector2d(1.0, 0.0), StabRep::trivial());
}

SeparableTestFn so2_fn(const Eigen::Vector2d& c, double amp) {
    return {single(BumpND{c, 1.0, 1.0}), make_chart_fn(GroupChart::SO2_ANGLE, {ChartFactor{0.0, 1.0, amp}})};
}

}  // namespace

TEST(CompactTrace, CircleOrbitMatchesBesselOracle) {
    const Eigen::Vector2d c(0.2, 0.1);
    const TraceResult eq1 = trace_eq1(so2_rep(), so2_fn(c, 2.0), kQ, CutoffSchedule::decades(0, 3));
    const TraceResult cmp = trace_compact(so2_rep(), so2_fn(c, 2.0), kQ);
    ASSERT_TRUE(eq1.converged());
    ASSERT_TRUE(cmp.converged());
    const double expect = 2.0 * std::exp(-1.0) * radial_oracle(2, 1.0) * std::cyl_bessel_j(0.0, 2 * pi * c.norm());
    EXPECT_NEAR(eq1.value().real(), expect, 0.02 * std::abs(expect));
    EXPECT_NEAR(std::abs(eq1.value() - cmp.value()), 0.0, 0.02 * std::abs(cmp.value()));
}

TEST(CompactTrace, Linearity) {
    const SeparableTestFn a = so2_fn(Eigen::Vector2d(0.2, 0.1), 1.0);
    const SeparableTestFn b = so2_fn(Eigen::Vector2d(-0.3, 0.4), 1.0);
    const SeparableTestFn sum{a.phi1 + scaled(b.phi1, -0.5), a.phi2};
    const TraceResult ta = trace_compact(so2_rep(), a, kQ), tb = trace_compact(so2_rep(), {b.phi1, a.phi2}, kQ);
    const TraceResult ts = trace_compact(so2_rep(), sum, kQ);
    const double errs = std::get<Converged>(ta.verdict).err + std::get<Converged>(tb.verdict).err +
                        std::get<Converged>(ts.verdict).err;
    EXPECT_LE(std::abs(ts.value() - (ta.value() - 0.5 * tb.value())), errs + 1e-12);
}

TEST(CompactTrace, TimelikeHyperboloidMatchesOracle) {
    const InducedRepDescriptor rep =
        make_induced_rep(make_semidirect(HFamily::SO12), Eigen::Vector3d(1.0, 0.0, 0.0), StabRep::trivial());
    const SeparableTestFn phi{single(BumpND{Eigen::Vector3d::Zero(), 1.0, 1.0}),
                              make_chart_fn(GroupChart::SO12_CONJ, {std::nullopt, ChartFactor{0.0, 1.0, 1.0}})};
    const TraceResult r = trace_compact(rep, phi, kQ);
    ASSERT_TRUE(r.converged());
    const double orbit = 2 * pi * oracle::simpson([](double s) {
        return std::sinh(s) * radial_oracle(3, std::sqrt(std::cosh(2 * s)));
    }, 0.0, 5.0, 2000);
    const double stab = oracle::simpson([](double th) { return oracle::profile(2 * std::cos(th) - 2); }, 0, 2 * pi, 20000) /
                        (2 * pi);
    EXPECT_NEAR(r.value().real(), orbit * stab, 0.02 * std::abs(orbit * stab));
    EXPECT_TRUE(trace_eq1(rep, phi, kQ, CutoffSchedule::decades(0, 3)).converged());
}

TEST(CompactTrace, NontrivialCharacterAgainstConstantIsZero) {
    const InducedRepDescriptor rep =
        make_induced_rep(make_semidirect(HFamily::SO12), Eigen::Vector3d(1.0, 0.0, 0.0), StabRep::so2(1));
    const SeparableTestFn phi{single(BumpND{Eigen::Vector3d::Zero(), 1.0, 1.0}), constant_chart_fn(1.0)};
    const TraceResult r = trace_compact(rep, phi, kQ);
    ASSERT_TRUE(r.converged());
    EXPECT_LT(std::abs(r.value()), 1e-6 * oracle::bump_mass(3, 1.0));
}

TEST(CompactTrace, RejectsNoncompactStabilizer) {
    const InducedRepDescriptor rep =
        make_induced_rep(make_semidirect(HFamily::SO12), Eigen::Vector3d(0.0, 0.0, 1.0), StabRep::trivial());
    const SeparableTestFn phi{single(BumpND{Eigen::Vector3d::Zero(), 1.0, 1.0}), constant_chart_fn(1.0)};
    EXPECT_EQ(code_of([&] { trace_compact(rep, phi, kQ); }), ErrorCode::NotCompactStabilizer);
}

TEST(TraceSo12, BoundAndZero) {
    const SeparableTestFn phi{single(BumpND{Eigen::Vector3d(0.5, 0.0, 0.0), 1.0, 1.0}),
                              make_chart_fn(GroupChart::SO12_CONJ, {std::nullopt, ChartFactor{0.0, 1.5, 1.0}})};
    const TraceResult r = trace_r3_so12(1.0, 1.0, phi, kQ);
    ASSERT_TRUE(r.converged());
    EXPECT_LE(std::abs(r.value()), r.diagnostic("bound"));
    // For a radial profile, (d1^2 + d2^2) p(|x|) = p'' s + p' (2 - s) / rho with s in [0, 1].
    double peak = 0.0;
    for (int i = 1; i < 20000; ++i) {
        const double rho = i / 20000.0, h = 1e-5;
        const double d1 = (oracle::profile(rho + h) - oracle::profile(rho - h)) / (2 * h);
        const double d2 = oracle::profile_d2_fd(rho, h);
        peak = std::max({peak, std::abs(2 * d1 / rho), std::abs(d2 + d1 / rho)});
    }
    const double max_dx = peak / (2 * pi * pi) * std::exp(-1.0);
    EXPECT_LE(r.diagnostic("max_Dx"), max_dx * (1 + 1e-4));
    EXPECT_GE(r.diagnostic("max_Dx"), 0.95 * max_dx);
    const TraceResult z = trace_r3_so12(1.0, 1.0, {BumpSum{}, phi.phi2}, kQ);
    ASSERT_TRUE(z.converged());
    EXPECT_EQ(z.value(), cplx(0.0, 0.0));
}
