#pragma once

#include <Eigen/Dense>
#include <vector>

#include "tracekit/groups/matrix.hpp"

namespace tracekit {

/// Ordered basis of the Lie algebra of a family (sl2 uses H, E, F).
const std::vector<Mat>& algebra_basis(Family f);
int algebra_rank(Family f);

AlgebraElement adjoint_action(const GroupElement& g, const AlgebraElement& x);
AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y);

/// Coordinates of x in algebra_basis(x.family).
Eigen::VectorXd algebra_coords(const AlgebraElement& x);

/// Matrix of ad x in the family basis.
Eigen::MatrixXd ad_matrix(const AlgebraElement& x);

/// Matrix of Ad g in the family basis.
Eigen::MatrixXd Ad_matrix(const GroupElement& g);

/// Coefficients c_0..c_n of det(t - A) = sum c_k t^k.
std::vector<double> char_poly(const Eigen::MatrixXd& a);

/// Coefficient of t^rank in det(t - ad x).
double eta(const AlgebraElement& x);

/// Trace form tr(xy).
double trace_form(const AlgebraElement& x, const AlgebraElement& y);

// sl(2,R) in the coordinates X = [[x1, x2 + x3], [x2 - x3, -x1]].
using Vec3 = Eigen::Vector3d;
AlgebraElement sl2_from_coords(const Vec3& c);
Vec3 sl2_to_coords(const AlgebraElement& x);
/// 3x3 matrix of Ad g acting on (x1, x2, x3).
Eigen::Matrix3d sl2_Ad_coords(const Mat& g);
/// tr(XY) = c^T P c' with P = diag(2, 2, -2).
Eigen::Matrix3d sl2_trace_pairing();

AlgebraElement sl2_H();
AlgebraElement sl2_E();
AlgebraElement sl2_F();

}  // namespace tracekit
