#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "tracekit/groups/random.hpp"
#include "tracekit/testfn/bump.hpp"
#include "tracekit/testfn/chart_fn.hpp"
#include "tracekit/testfn/fourier.hpp"
#include "tracekit/testfn/separable.hpp"
#include "../support/oracles.hpp"

using namespace tracekit;
using std::numbers::pi;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) out(i++) = x;
    return out;
}

double sinc(double x) { return std::abs(x) < 1e-12 ? 1.0 : std::sin(x) / x; }

/// Transform of the unit profile bump in d = 1 or 3 dimensions at |xi| = k.
double radial_oracle(int d, double k) {
    if (d == 1) return oracle::simpson([k](double t) { return oracle::profile(t) * std::cos(2 * pi * k * t); }, -1, 1, 4000);
    return oracle::simpson(
        [k](double t) { return 4 * pi * t * t * oracle::profile(t) * sinc(2 * pi * k * t); }, 0, 1, 4000);
}

}  // namespace

TEST(Bump, PointValues) {
    const BumpND b{vec({0.5, -1.0, 2.0}), 1.5, 3.0};
    EXPECT_DOUBLE_EQ(eval_bump(b, b.center), 3.0 * std::exp(-1.0));
    EXPECT_EQ(eval_bump(b, vec({0.5, 0.5, 2.0})), 0.0);
    EXPECT_EQ(eval_bump(b, vec({3.0, 0.0, 0.0})), 0.0);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 20; ++i) {
        const Eigen::VectorXd v = vec({u(rng), u(rng), u(rng)});
        EXPECT_NEAR(eval_bump(b, b.center + v), eval_bump(b, b.center - v), 1e-15);
    }
}

TEST(Bump, ProfileDerivativesAgreeWithDifferencesAndVanishAtEdge) {
    for (double t : {-0.9, -0.5, -0.1, 0.0, 0.3, 0.7, 0.95}) {
        const double h = 1e-5;
        const double d1 = (bump_profile(t + h) - bump_profile(t - h)) / (2 * h);
        EXPECT_NEAR(bump_profile_d1(t), d1, 1e-7);
        EXPECT_NEAR(bump_profile_d2(t), oracle::profile_d2_fd(t), 1e-5);
    }
    // Derivatives up to order 4 tend to zero at the boundary.
    const double h = 2e-4;
    for (double t : {0.99, 0.995, 0.999}) {
        const double p[] = {bump_profile(t - 2 * h), bump_profile(t - h), bump_profile(t), bump_profile(t + h),
                            bump_profile(t + 2 * h)};
        const double d3 = (p[4] - 2 * p[3] + 2 * p[1] - p[0]) / (2 * h * h * h);
        const double d4 = (p[4] - 4 * p[3] + 6 * p[2] - 4 * p[1] + p[0]) / (h * h * h * h);
        EXPECT_LT(std::abs(bump_profile_d1(t)), 1e-6);
        EXPECT_LT(std::abs(bump_profile_d2(t)), 1e-6);
        EXPECT_LT(std::abs(d3), 1e-6);
        EXPECT_LT(std::abs(d4), 1e-6);
    }
    EXPECT_EQ(bump_profile(1.0), 0.0);
    EXPECT_EQ(bump_profile_d1(1.0), 0.0);
    EXPECT_EQ(bump_profile_d2(-1.2), 0.0);
}

TEST(Fourier, GoldenMasses) {
    const QuadratureSpec q;
    const FourierValue f1 = fourier(BumpND{vec({0.0}), 1.0, 1.0}, vec({0.0}), Eigen::MatrixXd::Identity(1, 1), q);
    EXPECT_NEAR(f1.value.real(), 0.4439938161680788, 1e-12);
    EXPECT_NEAR(f1.value.imag(), 0.0, 1e-15);
    const FourierValue f2 =
        fourier(BumpND{vec({0.0, 0.0}), 1.0, 1.0}, vec({0.0, 0.0}), Eigen::MatrixXd::Identity(2, 2), q);
    EXPECT_NEAR(f2.value.real(), 0.466512393178328, 1e-10);
    const FourierValue f3 =
        fourier(BumpND{vec({0.0, 0.0, 0.0}), 1.0, 1.0}, vec({0.0, 0.0, 0.0}), Eigen::MatrixXd::Identity(3, 3), q);
    EXPECT_NEAR(f3.value.real(), 0.44108888727661, 1e-10);
    EXPECT_NEAR(f1.value.real(), oracle::bump_mass(1, 1.0), 1e-10);
    EXPECT_NEAR(f2.value.real(), oracle::bump_mass(2, 1.0), 1e-10);
    EXPECT_NEAR(f3.value.real(), oracle::bump_mass(3, 1.0), 1e-10);
}

TEST(Fourier, CenteredBumpIsRealEvenAndDecays) {
    const BumpND b{vec({0.0, 0.0, 0.0}), 1.0, 1.0};
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(3, 3);
    const QuadratureSpec q;
    const Eigen::VectorXd xi0 = vec({0.6, 0.0, 0.8});
    const FourierValue a = fourier(b, xi0, id, q), m = fourier(b, Eigen::VectorXd(-xi0), id, q);
    EXPECT_NEAR(a.value.imag(), 0.0, 1e-12);
    EXPECT_NEAR(a.value.real(), m.value.real(), 1e-12);
    EXPECT_NEAR(a.value.real(), radial_oracle(3, 1.0), 1e-9);
    const FourierValue far = fourier(b, Eigen::VectorXd(10.0 * xi0), id, q);
    const FourierValue zero = fourier(b, Eigen::VectorXd::Zero(3), id, q);
    EXPECT_LE(std::abs(far.value), 1e-3 * std::abs(zero.value));
}

TEST(Fourier, OffCenterPhaseAndRadialFormula) {
    const Eigen::VectorXd c = vec({0.3, -0.4, 0.2});
    const BumpND b{c, 0.7, 2.0};
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(3, 3);
    for (const Eigen::VectorXd& xi : {vec({0.5, 0.1, -0.2}), vec({-1.0, 0.7, 0.4}), vec({2.0, 0.0, 0.0})}) {
        const cplx phase = std::exp(cplx(0.0, -2 * pi * c.dot(xi)));
        const cplx expect = 2.0 * std::pow(0.7, 3) * radial_oracle(3, 0.7 * xi.norm()) * phase;
        const FourierValue got = fourier(b, xi, id, QuadratureSpec{});
        EXPECT_LT(std::abs(got.value - expect), 1e-9);
        EXPECT_LT(std::abs(fourier_fast(single(b), xi, id) - expect), 1e-8);
    }
}

TEST(Fourier, Linearity) {
    const BumpND b1{vec({0.2, 0.0}), 1.0, 1.0}, b2{vec({-0.5, 0.4}), 0.6, 1.0};
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(2, 2);
    const QuadratureSpec q;
    const BumpSum sum = scaled(single(b1), 2.5) + scaled(single(b2), -1.5);
    for (const Eigen::VectorXd& xi : {vec({0.0, 0.0}), vec({0.3, -0.8}), vec({1.5, 1.0})}) {
        const FourierValue f1 = fourier(b1, xi, id, q), f2 = fourier(b2, xi, id, q), fs = fourier(sum, xi, id, q);
        EXPECT_LT(std::abs(fs.value - (2.5 * f1.value - 1.5 * f2.value)), 1e-12 + fs.err + 2.5 * f1.err + 1.5 * f2.err);
    }
}

TEST(Fourier, LibraryRadialTransformMatchesOracle) {
    for (int d : {1, 3}) {
        for (double k : {0.0, 0.25, 1.0, 2.5, 6.0}) {
            EXPECT_NEAR(radial_profile_transform(d, k), radial_oracle(d, k), 1e-10) << d << " " << k;
            EXPECT_NEAR(radial_profile_transform_fast(d, k), radial_oracle(d, k), 1e-8) << d << " " << k;
        }
    }
}

TEST(Fourier, InversionAndParseval) {
    for (int d : {1, 3}) {
        const Eigen::VectorXd zero = Eigen::VectorXd::Zero(d);
        const BumpSum f = single(BumpND{zero, 1.0, 1.0});
        const double cut = decay_radius(f, 1e-9);
        ASSERT_GT(cut, 1.0);
        const int n = 40000;
        std::vector<double> ks(n + 1), fk(n + 1);
        for (int i = 0; i <= n; ++i) {
            ks[i] = cut * i / n;
            fk[i] = radial_profile_transform(d, ks[i]);
        }
        auto integrate = [&](auto weight) {
            double s = 0.0;
            for (int i = 0; i <= n; ++i) s += (i == 0 || i == n ? 1.0 : i % 2 ? 4.0 : 2.0) * weight(i);
            return s * (cut / n) / 3.0;
        };
        const double sphere = d == 1 ? 2.0 : 4 * pi;
        const double l2 = integrate([&](int i) { return sphere * std::pow(ks[i], d - 1) * fk[i] * fk[i]; });
        EXPECT_NEAR(l2, oracle::bump_l2(d, 1.0), 1e-4 * oracle::bump_l2(d, 1.0)) << d;
        for (int s = 0; s < 10; ++s) {
            const double r = 0.85 * s / 9.0;
            const double back = integrate([&](int i) {
                return d == 1 ? 2.0 * fk[i] * std::cos(2 * pi * ks[i] * r)
                              : 4 * pi * ks[i] * ks[i] * fk[i] * sinc(2 * pi * ks[i] * r);
            });
            EXPECT_NEAR(back, oracle::profile(r), 1e-4 * oracle::profile(r)) << d << " r=" << r;
        }
    }
}

TEST(Dx, CenterValueAndZero) {
    const double alpha = 1.3;
    const BumpND b{vec({0.0, 0.0, 0.0}), 1.0, 1.0};
    const double expect = 2.0 * oracle::profile_d2_fd(0.0, 1e-4) / (2 * pi * pi * alpha * alpha);
    EXPECT_NEAR(apply_Dx(b, alpha, b.center), expect, 1e-7);
    EXPECT_EQ(apply_Dx(BumpND{vec({0.0, 0.0, 0.0}), 1.0, 0.0}, alpha, vec({0.1, 0.2, 0.0})), 0.0);
}

TEST(Dx, AgreesWithFiniteDifferencesAndCommutesWithRotation) {
    const BumpND b{vec({0.2, -0.1, 0.4}), 1.2, 1.7};
    const double alpha = 0.8, h = 1e-4;
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-0.55, 0.55);
    for (int i = 0; i < 20; ++i) {
        const Eigen::VectorXd x = b.center + vec({u(rng), u(rng), u(rng)});
        double lap = 0.0;
        for (int j = 1; j <= 2; ++j) {
            Eigen::VectorXd e = Eigen::VectorXd::Zero(3);
            e(j) = h;
            lap += (eval_bump(b, x + e) - 2 * eval_bump(b, x) + eval_bump(b, x - e)) / (h * h);
        }
        const double fd = lap / (2 * pi * pi * alpha * alpha);
        const double exact = apply_Dx(b, alpha, x);
        EXPECT_NEAR(exact, fd, 1e-5 * std::max(std::abs(exact), 1e-2));
    }
    const BumpND radial{vec({0.3, 0.0, 0.0}), 1.0, 1.0};
    for (int i = 0; i < 20; ++i) {
        const Eigen::VectorXd x = vec({0.3 + u(rng), u(rng), u(rng)});
        const double th = 0.37 * i;
        Eigen::VectorXd kx = x;
        kx(1) = std::cos(th) * x(1) - std::sin(th) * x(2);
        kx(2) = std::sin(th) * x(1) + std::cos(th) * x(2);
        EXPECT_NEAR(apply_Dx(radial, alpha, kx), apply_Dx(radial, alpha, x), 1e-8);
    }
}

TEST(KAverage, InvariantInputUnchangedAndIdempotent) {
    const KAverage k{0, 1, 256};
    const BumpSum radial = single(BumpND{vec({0.0, 0.0, 0.5}), 1.0, 1.0});
    const BumpSum off = single(BumpND{vec({0.4, 0.1, 0.0}), 0.8, 1.0});
    const BumpSum avg = k_average(off, k);
    EXPECT_TRUE(avg.k_invariant);
    const BumpSum avg2 = k_average(avg, k);
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 30; ++i) {
        const Eigen::VectorXd x = vec({u(rng), u(rng), 0.5 * u(rng)});
        EXPECT_NEAR(eval(k_average(radial, k), x), eval(radial, x), 1e-10);
        EXPECT_NEAR(eval(avg2, x), eval(avg, x), 1e-9);
        const double th = 2.1 * u(rng);
        Eigen::VectorXd kx = x;
        kx(0) = std::cos(th) * x(0) - std::sin(th) * x(1);
        kx(1) = std::sin(th) * x(0) + std::cos(th) * x(1);
        EXPECT_NEAR(eval(avg, kx), eval(avg, x), 1e-8);
    }
}

TEST(KAverage, ConjugationInvariantChartFunction) {
    std::mt19937_64 rng(5);
    const GroupChartFn so12 = make_chart_fn(GroupChart::SO12_CONJ, {ChartFactor{0.0, 2.0, 1.0}, ChartFactor{0.5, 1.5, 1.0}});
    const GroupChartFn sl2 = make_chart_fn(GroupChart::SL2_CONJ, {ChartFactor{2.0, 3.0, 1.0}, std::nullopt});
    EXPECT_TRUE(so12.k_invariant);
    EXPECT_TRUE(sl2.k_invariant);
    const GroupChartFn so12_avg = k_average(so12, 64), sl2_avg = k_average(sl2, 64);
    for (int i = 0; i < 30; ++i) {
        const GroupElement h = random_group_element(Family::SO12, rng, 0.6);
        EXPECT_NEAR(so12_avg.eval(h), so12.eval(h), 1e-8);
        const GroupElement g = random_group_element(Family::SL2R, rng, 0.6);
        EXPECT_NEAR(sl2_avg.eval(g), sl2.eval(g), 1e-8);
    }
}

TEST(Separable, PointwiseProduct) {
    const SeparableTestFn f{single(BumpND{vec({0.1, 0.0, 0.2}), 1.0, 2.0}),
                            make_chart_fn(GroupChart::SO12_CONJ, {std::nullopt, ChartFactor{0.0, 1.0, 1.0}})};
    std::mt19937_64 rng(6);
    for (int i = 0; i < 20; ++i) {
        const Eigen::VectorXd n = vec({0.3 * i / 20.0, -0.2, 0.1});
        const GroupElement h = random_group_element(Family::SO12, rng, 0.5);
        EXPECT_DOUBLE_EQ(f.eval(n, h), eval(f.phi1, n) * f.phi2.eval(h));
    }
    EXPECT_FALSE(f.is_zero());
}
