#pragma once

#include <Eigen/Dense>

#include "tracekit/groups/matrix.hpp"

namespace tracekit::detail {

GroupElement so12_boost01(double r);

/// h in SO0(1,2) with h e0 = y for y on the upper unit hyperboloid.
GroupElement timelike_frame(const Eigen::Vector3d& y);
/// h with h e1 = y for y on the unit one-sheeted hyperboloid.
GroupElement spacelike_frame(const Eigen::Vector3d& y);
/// h with h (1, 0, 1) = y for y on the upper cone.
GroupElement cone_frame(const Eigen::Vector3d& y);

/// g0 in SL(2) with Ad(g0) H_u = X (u > 0 the positive eigenvalue).
Mat hyperbolic_frame(const Eigen::Vector3d& x, double u);
/// g0 with Ad(g0) H_v = X, v signed.
Mat elliptic_frame(const Eigen::Vector3d& x, double v);
/// g0 with Ad(g0)(sign E) = X; returns sign through the argument.
Mat nilpotent_frame(const Eigen::Vector3d& x, int& sign);

}  // namespace tracekit::detail
