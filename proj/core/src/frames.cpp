#include "frames.hpp"

#include <cmath>
#include <numbers>

#include "tracekit/groups/lie.hpp"

namespace tracekit::detail {

GroupElement so12_boost01(double r) {
    Mat m = Mat::Identity(3, 3);
    const double c = std::cosh(r), s = std::sinh(r);
    m(0, 0) = c;
    m(0, 1) = s;
    m(1, 0) = s;
    m(1, 1) = c;
    return {Family::SO12, m};
}

GroupElement timelike_frame(const Eigen::Vector3d& y) {
    const double r = std::acosh(std::max(1.0, y(0)));
    const double psi = std::atan2(y(2), y(1));
    return so12_rotation(psi) * so12_boost01(r);
}

GroupElement spacelike_frame(const Eigen::Vector3d& y) {
    const double r = std::asinh(y(0));
    const double psi = std::atan2(y(2), y(1));
    return so12_rotation(psi) * so12_boost01(r);
}

GroupElement cone_frame(const Eigen::Vector3d& y) {
    const double psi = std::atan2(y(2), y(1));
    return so12_rotation(psi - 0.5 * std::numbers::pi) * so12_a(std::log(y(0)));
}

Mat hyperbolic_frame(const Eigen::Vector3d& x, double u) {
    const Mat xm = sl2_from_coords(x).m;
    const Mat id = Mat::Identity(2, 2);
    const Mat plus = xm + u * id;
    const Mat minus = xm - u * id;
    Eigen::Vector2d vp = plus.col(0).norm() >= plus.col(1).norm() ? Eigen::Vector2d(plus.col(0))
                                                                   : Eigen::Vector2d(plus.col(1));
    Eigen::Vector2d vm = minus.col(0).norm() >= minus.col(1).norm() ? Eigen::Vector2d(minus.col(0))
                                                                     : Eigen::Vector2d(minus.col(1));
    Mat g(2, 2);
    g << vp(0), vm(0), vp(1), vm(1);
    double d = g.determinant();
    if (d < 0) {
        g.col(1) *= -1.0;
        d = -d;
    }
    return g / std::sqrt(d);
}

Mat elliptic_frame(const Eigen::Vector3d& x, double v) {
    const Mat xm = sl2_from_coords(x).m;
    Mat g(2, 2);
    g << 1.0, -xm(0, 0) / v, 0.0, -xm(1, 0) / v;
    const double d = g.determinant();
    return g / std::sqrt(std::abs(d));
}

Mat nilpotent_frame(const Eigen::Vector3d& x, int& sign) {
    const Mat xm = sl2_from_coords(x).m;
    Eigen::Vector2d w = xm.col(0).norm() >= xm.col(1).norm() ? Eigen::Vector2d(1, 0) : Eigen::Vector2d(0, 1);
    Eigen::Vector2d v = xm.topLeftCorner(2, 2) * w;
    Mat g(2, 2);
    g << v(0), w(0), v(1), w(1);
    double d = g.determinant();
    sign = 1;
    if (d < 0) {
        g.col(1) *= -1.0;
        d = -d;
        sign = -1;
    }
    return g / std::sqrt(d);
}

}  // namespace tracekit::detail
