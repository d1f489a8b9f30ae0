#include "tracekit/plancherel/torus.hpp"

#include <cmath>

#include "tracekit/groups/lie.hpp"
#include "tracekit/util/error.hpp"

namespace tracekit {

GroupElement TorusDescriptor::element_a(int sign, double x) const {
    if (id != TorusId::SplitA) fail(ErrorCode::FamilyMismatch, "element_a on the compact torus");
    GroupElement g = sl2_a(x);
    if (sign < 0) g.m = -g.m;
    return g;
}

GroupElement TorusDescriptor::element_b(double phi) const {
    if (id != TorusId::CompactB) fail(ErrorCode::FamilyMismatch, "element_b on the split torus");
    return sl2_rotation(-phi);
}

TorusDescriptor split_torus() { return {TorusId::SplitA, 2}; }
TorusDescriptor compact_torus() { return {TorusId::CompactB, 1}; }

TorusCharacter TorusCharacter::split(int eps, double s) {
    if (eps != 0 && eps != 1) fail(ErrorCode::InvalidArgument, "eps must be 0 or 1");
    TorusCharacter c;
    c.torus = TorusId::SplitA;
    c.eps = eps;
    c.s = s;
    return c;
}

TorusCharacter TorusCharacter::compact(int n) {
    TorusCharacter c;
    c.torus = TorusId::CompactB;
    c.n = n;
    return c;
}

std::complex<double> TorusCharacter::value(const GroupElement& t, const NumericPolicy& p) const {
    if (t.family != Family::SL2R || t.m.rows() != 2) fail(ErrorCode::FamilyMismatch, "torus character needs SL(2,R)");
    const Mat& m = t.m;
    if (torus == TorusId::SplitA) {
        if (std::abs(m(0, 1)) > p.group_tol || std::abs(m(1, 0)) > p.group_tol ||
            std::abs(m(0, 0) * m(1, 1) - 1.0) > p.group_tol) {
            fail(ErrorCode::OutOfChart, "element is not in A");
        }
        const double a = m(0, 0);
        const double sign = (eps == 1 && a < 0.0) ? -1.0 : 1.0;
        return std::polar(sign, -2.0 * M_PI * s * std::log(std::abs(a)));
    }
    if (std::abs(m(0, 0) - m(1, 1)) > p.group_tol || std::abs(m(0, 1) + m(1, 0)) > p.group_tol) {
        fail(ErrorCode::OutOfChart, "element is not in B");
    }
    const double phi = std::atan2(m(0, 1), m(0, 0));
    return std::polar(1.0, -static_cast<double>(n) * phi);
}

CartanElement cartan_u(double u) {
    Mat m(2, 2);
    m << u, 0.0, 0.0, -u;
    return {TorusId::SplitA, u, {Family::SL2R, m}};
}

CartanElement cartan_v(double v) {
    Mat m(2, 2);
    m << 0.0, v, -v, 0.0;
    return {TorusId::CompactB, v, {Family::SL2R, m}};
}

bool centralizes(const GroupElement& t, const CartanElement& h, double tol) {
    const Mat c = t.m * h.matrix.m - h.matrix.m * t.m;
    return c.cwiseAbs().maxCoeff() <= tol;
}

std::complex<double> chi_g(const AlgebraElement& x, const CartanElement& h) {
    return std::polar(1.0, -2.0 * M_PI * trace_form(x, h.matrix));
}

Eigen::Vector3d split_orbit_point(double u, double theta, double x) {
    const double c = std::cos(2.0 * theta), s = std::sin(2.0 * theta);
    return {c * u + s * u * x, s * u - c * u * x, -u * x};
}

Eigen::Vector3d compact_orbit_point(double v, double psi, double r) {
    const double c = std::cos(2.0 * psi), s = std::sin(2.0 * psi);
    const double y = v * std::sinh(2.0 * r);
    return {-s * y, c * y, v * std::cosh(2.0 * r)};
}

}  // namespace tracekit
