#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "tracekit/groups/lie.hpp"
#include "tracekit/groups/random.hpp"
#include "tracekit/plancherel/plancherel.hpp"
#include "tracekit/plancherel/torus.hpp"
#include "../support/oracles.hpp"

using namespace tracekit;
using std::numbers::pi;

namespace {

SeparableTestFn centered_fn(double amplitude = 1.0, const Eigen::Vector3d& c = Eigen::Vector3d::Zero()) {
    return {single(BumpND{c, 1.0, amplitude}),
            make_chart_fn(GroupChart::SL2_CONJ, {ChartFactor{2.0, 5.0, 1.0}, ChartFactor{0.0, 40.0, 1.0}})};
}

SeparableTestFn zero_fn() { return {BumpSum{}, centered_fn().phi2}; }

double value(const TraceResult& r) { return std::abs(r.value()); }

}  // namespace

TEST(ChiG, Examples) {
    const CartanElement h = cartan_u(1.0);
    EXPECT_LT(std::abs(chi_g(sl2_E(), h) - 1.0), 1e-15);
    EXPECT_LT(std::abs(chi_g(h.matrix, h) - 1.0), 1e-12);
    std::mt19937_64 rng(1);
    for (const CartanElement& c : {cartan_u(0.7), cartan_v(-1.3)}) {
        for (int i = 0; i < 20; ++i) {
            const AlgebraElement x = random_algebra_element(Family::SL2R, rng, 2.0);
            const AlgebraElement y = random_algebra_element(Family::SL2R, rng, 2.0);
            const AlgebraElement xy{Family::SL2R, x.m + y.m};
            EXPECT_NEAR(std::abs(chi_g(x, c)), 1.0, 1e-14);
            EXPECT_LT(std::abs(chi_g(xy, c) - chi_g(x, c) * chi_g(y, c)), 1e-12);
        }
    }
}

TEST(TorusCharacter, HomomorphismAndRestriction) {
    const TorusDescriptor a = split_torus(), b = compact_torus();
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int eps : {0, 1}) {
        const TorusCharacter rho = TorusCharacter::split(eps, 0.8);
        for (int i = 0; i < 30; ++i) {
            const GroupElement t1 = a.element_a(u(rng) > 0 ? 1 : -1, u(rng));
            const GroupElement t2 = a.element_a(u(rng) > 0 ? 1 : -1, u(rng));
            EXPECT_NEAR(std::abs(rho.value(t1)), 1.0, 1e-14);
            EXPECT_LT(std::abs(rho.value(t1 * t2) - rho.value(t1) * rho.value(t2)), 1e-12);
        }
        for (double x : {-1.0, 0.3, 2.0}) {
            EXPECT_LT(std::abs(rho.value(a.element_a(1, x)) - std::exp(cplx(0.0, -2 * pi * 0.8 * x))), 1e-12);
            EXPECT_LT(std::abs(rho.value(a.element_a(-1, x)) - (eps ? -1.0 : 1.0) * std::exp(cplx(0.0, -2 * pi * 0.8 * x))),
                      1e-12);
        }
    }
    const TorusCharacter rb = TorusCharacter::compact(3);
    for (int i = 0; i < 30; ++i) {
        const double p1 = u(rng), p2 = u(rng);
        EXPECT_LT(std::abs(rb.value(b.element_b(p1) * b.element_b(p2)) - rb.value(b.element_b(p1)) * rb.value(b.element_b(p2))),
                  1e-12);
        EXPECT_LT(std::abs(rb.value(b.element_b(p1)) - std::exp(cplx(0.0, -3.0 * p1))), 1e-12);
    }
}

TEST(Cartan, EtaCentralizerAndOrbitSeparation) {
    std::mt19937_64 rng(3);
    for (double p = -3.0; p <= 3.0; p += 0.25) {
        if (p == 0.0) continue;
        EXPECT_NEAR(eta(cartan_u(p).matrix), -4 * p * p, 1e-10);
        EXPECT_NEAR(eta(cartan_v(p).matrix), 4 * p * p, 1e-10);
        EXPECT_TRUE(centralizes(split_torus().element_a(-1, 0.4 * p), cartan_u(p), 1e-12));
        EXPECT_TRUE(centralizes(compact_torus().element_b(p), cartan_v(p), 1e-12));
        EXPECT_FALSE(centralizes(compact_torus().element_b(0.7), cartan_u(p), 1e-6));
        const GroupElement g = random_group_element(Family::SL2R, rng, 1.0);
        EXPECT_NEAR(adjoint_action(g, cartan_u(p).matrix).m.determinant(), -p * p, 1e-9 * (1 + p * p));
        EXPECT_NEAR(adjoint_action(g, cartan_v(p).matrix).m.determinant(), p * p, 1e-9 * (1 + p * p));
    }
}

TEST(Cartan, OrbitPointsMatchMatrixProducts) {
    for (double th : {0.0, 0.7, 2.5}) {
        for (double x : {-1.0, 0.0, 0.8}) {
            const GroupElement g = sl2_rotation(th) * sl2_n(x);
            const Eigen::Vector3d ref = sl2_to_coords(adjoint_action(g, cartan_u(0.6).matrix));
            EXPECT_LT((split_orbit_point(0.6, th, x) - ref).norm(), 1e-12);
            const GroupElement k = sl2_rotation(th) * sl2_a(x);
            const Eigen::Vector3d refb = sl2_to_coords(adjoint_action(k, cartan_v(0.6).matrix));
            EXPECT_LT((compact_orbit_point(0.6, th, x) - refb).norm(), 1e-12);
        }
    }
}

TEST(TorusTraces, ZeroFunction) {
    EXPECT_EQ(trace_piA(0, 0.5, 0.5, zero_fn()).value(), cplx(0.0, 0.0));
    EXPECT_EQ(trace_piB(1, 0.5, zero_fn()).value(), cplx(0.0, 0.0));
    const Eq10Result r = eq10_check(compact_torus(), cartan_v(0.5), zero_fn(), Truncation{});
    EXPECT_EQ(r.lhs, 0.0);
    EXPECT_EQ(r.rhs, 0.0);
}

TEST(TorusTraces, DecayInDualParameters) {
    const SeparableTestFn phi = centered_fn();
    for (int eps : {0, 1}) {
        const double t0 = value(trace_piA(eps, 0.0, 0.5, phi)), t20 = value(trace_piA(eps, 20.0, 0.5, phi));
        if (eps == 0) {
            ASSERT_GT(t0, 0.0);
        }
        EXPECT_LT(t20, 1e-2 * std::max(t0, value(trace_piA(0, 0.0, 0.5, phi))));
    }
    const double b0 = value(trace_piB(0, 0.5, phi));
    ASSERT_GT(b0, 0.0);
    EXPECT_LT(value(trace_piB(20, 0.5, phi)), 1e-2 * b0);
    EXPECT_LT(value(trace_piB(-20, 0.5, phi)), 1e-2 * b0);
}

TEST(TorusTraces, ReflectionOfCompactParameter) {
    const SeparableTestFn phi = centered_fn();
    for (int n : {0, 1, 3}) {
        const double plus = value(trace_piB(n, 0.7, phi)), minus = value(trace_piB(n, -0.7, phi));
        EXPECT_NEAR(plus, minus, 1e-8 * std::max(plus, 1e-12)) << n;
    }
}

TEST(Eq10, BothToriWithinTolerance) {
    const SeparableTestFn phi = centered_fn();
    const Eq10Result b = eq10_check(compact_torus(), cartan_v(0.5), phi, Truncation{});
    EXPECT_LE(std::abs(b.lhs - b.rhs), 0.02 * std::abs(b.lhs));
    const Eq10Result a = eq10_check(split_torus(), cartan_u(0.5), phi, Truncation{});
    EXPECT_LE(std::abs(a.lhs - a.rhs), 0.03 * std::abs(a.lhs));
    Truncation small;
    small.n_max = 4;
    small.s_max = 3.0;
    const Eq10Result bs = eq10_check(compact_torus(), cartan_v(0.5), phi, small);
    EXPECT_LE(std::abs(b.lhs - b.rhs), std::abs(bs.lhs - bs.rhs));
}

TEST(Weyl, OddFunctionGivesZero) {
    const Eigen::Vector3d c(0.4, 0.3, 0.5);
    const BumpSum even = single(BumpND{c, 1.0, 1.0});
    const BumpSum odd = even + single(BumpND{-c, 1.0, -1.0});
    const WeylRow re = weyl_row(even), ro = weyl_row(odd);
    EXPECT_LT(std::abs(ro.lhs), 1e-10 * std::abs(re.lhs));
    for (int p = 0; p < 2; ++p) {
        EXPECT_LT(std::abs(ro.split[p]), 1e-8 * std::abs(re.split[p]) + 1e-12);
        EXPECT_LT(std::abs(ro.compact[p]), 1e-8 * std::abs(re.compact[p]) + 1e-12);
    }
}

TEST(Weyl, EllipticSupportHasNoSplitContribution) {
    const WeylRow r = weyl_row(single(BumpND{Eigen::Vector3d(0.0, 0.0, 2.0), 1.0, 1.0}));
    EXPECT_EQ(r.split[0], 0.0);
    EXPECT_EQ(r.split[1], 0.0);
    EXPECT_GT(r.compact[0], 0.0);
}

TEST(Weyl, DefaultFamilyFits) {
    const std::vector<BumpSum> fam = default_weyl_family();
    ASSERT_GE(fam.size(), 6u);
    const WeylReport rep = weyl_check(fam);
    EXPECT_LT(rep.best.residual, 0.01);
    EXPECT_LT(rep.best.condition, default_policy().fit_condition_max);
    EXPECT_EQ(rep.fits.size(), 4u);
    for (size_t i = 0; i < fam.size(); ++i) {
        double mass = 0.0;
        for (const BumpND& b : fam[i].terms) mass += b.amplitude * oracle::bump_mass(3, b.radius);
        EXPECT_NEAR(rep.rows[i].lhs, mass, 1e-8 * std::abs(mass));
    }
}

TEST(Plancherel, ScalingIsLinear) {
    Truncation tr;
    tr.n_max = 6;
    tr.s_max = 4.0;
    tr.u_max = 2.0;
    tr.v_max = 2.0;
    TorusQuadrature q;
    q.cartan_nodes_per_unit = 8;
    const WeylFit fit{2, 2, pi, 2.0};
    const PlancherelReport one = plancherel_verify(centered_fn(1.0), tr, DensityMode::FittedWeights, fit, q);
    const PlancherelReport two = plancherel_verify(centered_fn(2.0), tr, DensityMode::FittedWeights, fit, q);
    EXPECT_NEAR(two.lhs, 2.0 * one.lhs, 1e-12 * std::abs(one.lhs));
    EXPECT_NEAR(two.rhs_total, 2.0 * one.rhs_total, 1e-10 * std::abs(one.rhs_total));
    EXPECT_EQ(one.rhs_total, one.rhs_a + one.rhs_b);
    EXPECT_NEAR(one.lhs, std::exp(-3.0), 1e-15);
}
