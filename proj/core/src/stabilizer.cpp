#include <cmath>
#include <numbers>

#include "frames.hpp"
#include "tracekit/groups/lie.hpp"
#include "tracekit/orbits/orbits.hpp"
#include "tracekit/util/error.hpp"

namespace tracekit {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

double unit_density(std::span<const double>) { return 1.0; }
double angle_density(std::span<const double>) { return 1.0 / kTwoPi; }

StabilizerDescriptor conjugated(const GroupElement& h, std::function<GroupElement(double)> base,
                                bool compact, std::string description) {
    StabilizerDescriptor s;
    s.compact = compact;
    s.dimension = 1;
    s.axes = {compact ? ChartAxis{0.0, kTwoPi, true} : ChartAxis{-kInf, kInf, false}};
    const GroupElement hinv = inverse(h);
    s.param = [h, hinv, base](std::span<const double> c) { return h * base(c[0]) * hinv; };
    s.haar = compact ? angle_density : unit_density;
    s.components = {identity(h.family)};
    s.description = std::move(description);
    return s;
}

StabilizerDescriptor trivial(Family f) {
    StabilizerDescriptor s;
    s.compact = true;
    s.dimension = 0;
    s.param = [f](std::span<const double>) { return identity(f); };
    s.haar = unit_density;
    s.components = {identity(f)};
    s.description = "trivial";
    return s;
}

StabilizerDescriptor whole_so12() {
    StabilizerDescriptor s;
    s.compact = false;
    s.dimension = 3;
    s.axes = {{0.0, kTwoPi, true}, {-kInf, kInf, false}, {-kInf, kInf, false}};
    s.param = [](std::span<const double> c) { return so12_rotation(c[0]) * so12_u(c[1]) * so12_a(c[2]); };
    s.haar = angle_density;
    s.components = {identity(Family::SO12)};
    s.description = "SO0(1,2) in KUA coordinates";
    return s;
}

StabilizerDescriptor whole_sl2() {
    StabilizerDescriptor s;
    s.compact = false;
    s.dimension = 3;
    s.axes = {{0.0, kTwoPi, true}, {-kInf, kInf, false}, {-kInf, kInf, false}};
    s.param = [](std::span<const double> c) { return sl2_rotation(c[0]) * sl2_a(c[1]) * sl2_n(c[2]); };
    s.haar = [](std::span<const double> c) { return std::exp(2.0 * c[1]) / kTwoPi; };
    s.components = {identity(Family::SL2R)};
    s.description = "SL(2,R) in KAN coordinates";
    return s;
}

GroupElement sl2_lower(double x) {
    Mat m = Mat::Identity(2, 2);
    m(1, 0) = x;
    return {Family::SL2R, m};
}

StabilizerDescriptor so12_stabilizer(const Eigen::Vector3d& xi, const OrbitClass& c) {
    switch (c.label) {
        case OrbitLabel::Zero: return whole_so12();
        case OrbitLabel::TimelikeUpper:
        case OrbitLabel::TimelikeLower: {
            const double alpha = c.invariants[0];
            const Eigen::Vector3d y = (c.label == OrbitLabel::TimelikeUpper ? 1.0 : -1.0) * xi / alpha;
            return conjugated(detail::timelike_frame(y), so12_rotation, true, "conjugate of SO(2)");
        }
        case OrbitLabel::Spacelike: {
            const Eigen::Vector3d y = xi / c.invariants[0];
            return conjugated(detail::spacelike_frame(y), so12_a, false, "conjugate of A");
        }
        case OrbitLabel::ConeUpper:
        case OrbitLabel::ConeLower: {
            const Eigen::Vector3d y = (c.label == OrbitLabel::ConeUpper ? 1.0 : -1.0) * xi;
            return conjugated(detail::cone_frame(y), so12_u, false, "conjugate of U");
        }
        default: break;
    }
    fail(ErrorCode::UnsupportedFamily, "no stabilizer for this SO12 class");
}

StabilizerDescriptor o12_stabilizer(const Eigen::Vector3d& xi, const OrbitClass& c) {
    if (c.label != OrbitLabel::Timelike)
        fail(ErrorCode::UnsupportedFamily, "O12_COMPACTDEMO stabilizers are implemented for timelike points");
    const double alpha = c.invariants[0];
    const Eigen::Vector3d y = (xi(0) > 0 ? 1.0 : -1.0) * xi / alpha;
    const GroupElement h = detail::timelike_frame(y);
    const GroupElement hinv = inverse(h);
    StabilizerDescriptor s;
    s.compact = true;
    s.dimension = 1;
    s.axes = {{0.0, kTwoPi, true}};
    s.param = [h, hinv](std::span<const double> a) {
        GroupElement g = h * so12_rotation(a[0]) * hinv;
        g.family = Family::O12;
        return g;
    };
    s.haar = [](std::span<const double>) { return 0.5 / kTwoPi; };
    Mat refl = Mat::Identity(3, 3);
    refl(2, 2) = -1.0;
    s.components = {identity(Family::O12), {Family::O12, h.m * refl * hinv.m}};
    s.description = "conjugate of O(2)";
    return s;
}

StabilizerDescriptor sln_stabilizer(int n, const Eigen::VectorXd& xi, const OrbitClass& c) {
    if (c.label == OrbitLabel::Zero) {
        if (n == 2) return whole_sl2();
        fail(ErrorCode::UnsupportedFamily, "full SL(3,R) chart is not implemented");
    }
    // h0^{-T} e1 = xi, so that Stab(xi) = h0 H0 h0^{-1}.
    Mat m(n, n);
    const double rho = xi.norm();
    if (n == 2) {
        m << xi(0), -xi(1) / (rho * rho), xi(1), xi(0) / (rho * rho);
    } else {
        Eigen::Matrix3d basis = Eigen::Matrix3d::Identity();
        basis.col(0) = xi / rho;
        Eigen::HouseholderQR<Eigen::Matrix3d> qr(basis);
        Eigen::Matrix3d q = qr.householderQ();
        if (q.col(0).dot(xi) < 0) q.col(0) *= -1.0;
        if (q.determinant() < 0) q.col(2) *= -1.0;
        m.col(0) = xi;
        m.col(1) = q.col(1) / std::sqrt(rho);
        m.col(2) = q.col(2) / std::sqrt(rho);
    }
    const Family f = n == 2 ? Family::SL2R : Family::SL3R;
    const GroupElement h0{f, m.inverse().transpose()};
    const GroupElement h0inv = inverse(h0);
    StabilizerDescriptor s;
    s.compact = false;
    s.components = {identity(f)};
    if (n == 2) {
        s.dimension = 1;
        s.axes = {{-kInf, kInf, false}};
        s.param = [h0, h0inv](std::span<const double> a) { return h0 * sl2_lower(a[0]) * h0inv; };
        s.haar = unit_density;
        s.description = "conjugate of H0 = U";
        return s;
    }
    s.dimension = 5;
    s.axes = {{-kInf, kInf, false}, {-kInf, kInf, false}, {0.0, kTwoPi, true},
              {-kInf, kInf, false}, {-kInf, kInf, false}};
    s.param = [h0, h0inv](std::span<const double> a) {
        const Mat b = (sl2_rotation(a[2]) * sl2_a(a[3]) * sl2_n(a[4])).m;
        Mat g = Mat::Identity(3, 3);
        g(1, 0) = a[0];
        g(2, 0) = a[1];
        g.block(1, 1, 2, 2) = b;
        return h0 * GroupElement{Family::SL3R, g} * h0inv;
    };
    s.haar = [](std::span<const double> a) { return std::exp(2.0 * a[3]) / kTwoPi; };
    s.description = "conjugate of H0 = M0 U";
    return s;
}

StabilizerDescriptor adjoint_stabilizer(const Eigen::Vector3d& xi, const OrbitClass& c) {
    const GroupElement minus_id{Family::SL2R, -Mat::Identity(2, 2)};
    switch (c.label) {
        case OrbitLabel::Zero: return whole_sl2();
        case OrbitLabel::Hyperbolic: {
            const GroupElement g0{Family::SL2R, detail::hyperbolic_frame(xi, c.invariants[0])};
            auto s = conjugated(g0, sl2_a, false, "conjugate of the split torus");
            s.components.push_back(minus_id);
            return s;
        }
        case OrbitLabel::Elliptic: {
            const GroupElement g0{Family::SL2R, detail::elliptic_frame(xi, c.invariants[0])};
            return conjugated(g0, sl2_rotation, true, "conjugate of the compact torus");
        }
        case OrbitLabel::Nilpotent: {
            int sign = 1;
            const GroupElement g0{Family::SL2R, detail::nilpotent_frame(xi, sign)};
            auto s = conjugated(g0, sl2_n, false, "conjugate of G0 = {+-n_x}");
            s.components.push_back(minus_id);
            return s;
        }
        default: break;
    }
    fail(ErrorCode::UnsupportedFamily, "no stabilizer for this adjoint class");
}

}  // namespace

StabilizerDescriptor stabilizer(const SemidirectDescriptor& sd, const CharacterPoint& point,
                                const NumericPolicy& p) {
    const OrbitClass c = classify_orbit(sd, point, p);
    const Eigen::VectorXd& xi = point.xi;
    switch (sd.h_family) {
        case HFamily::SO12: return so12_stabilizer(xi, c);
        case HFamily::O12_COMPACTDEMO: return o12_stabilizer(xi, c);
        case HFamily::SL2R: return sln_stabilizer(2, xi, c);
        case HFamily::SL3R: return sln_stabilizer(3, xi, c);
        case HFamily::ADJ_SL2R: return adjoint_stabilizer(xi, c);
        case HFamily::SO2: {
            if (c.label != OrbitLabel::Zero) return trivial(Family::SO2);
            StabilizerDescriptor s = conjugated(identity(Family::SO2), so2_rotation, true, "SO(2)");
            return s;
        }
        case HFamily::O11: {
            if (c.label != OrbitLabel::Zero) return trivial(Family::O11);
            return conjugated(identity(Family::O11), o11_boost, false, "SO0(1,1)");
        }
        case HFamily::HEIS3:
        case HFamily::UNIP4: {
            const HFamily f = sd.h_family;
            if (c.label == OrbitLabel::Surface) return trivial(sd.group_family);
            StabilizerDescriptor s;
            s.compact = false;
            s.components = {identity(sd.group_family)};
            if (c.label == OrbitLabel::Line) {
                // Directions a with a . (xi1, xi2) = 0 (HEIS3) or -x xi_a + y xi_d = 0 (UNIP4).
                double d0, d1;
                if (f == HFamily::HEIS3) {
                    d0 = -xi(1);
                    d1 = xi(0);
                } else {
                    d0 = xi(3);
                    d1 = xi(0);
                }
                const double norm = std::hypot(d0, d1);
                d0 /= norm;
                d1 /= norm;
                s.dimension = 1;
                s.axes = {{-kInf, kInf, false}};
                s.param = [f, d0, d1](std::span<const double> a) { return h_element(f, a[0] * d0, a[0] * d1); };
                s.haar = unit_density;
                s.description = "one-parameter subgroup";
                return s;
            }
            s.dimension = 2;
            s.axes = {{-kInf, kInf, false}, {-kInf, kInf, false}};
            s.param = [f](std::span<const double> a) { return h_element(f, a[0], a[1]); };
            s.haar = unit_density;
            s.description = "all of H";
            return s;
        }
    }
    fail(ErrorCode::UnsupportedFamily, "no stabilizer for this family");
}

}  // namespace tracekit
