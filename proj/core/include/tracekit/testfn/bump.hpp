#pragma once

#include <Eigen/Dense>
#include <vector>

namespace tracekit {

/// p(t) = exp(-1 / (1 - t^2)) on |t| < 1, zero elsewhere, with closed-form derivatives.
double bump_profile(double t);
double bump_profile_d1(double t);
double bump_profile_d2(double t);

struct BumpND {
    Eigen::VectorXd center;
    double radius = 1.0;
    double amplitude = 1.0;
};

double eval_bump(const BumpND& b, const Eigen::VectorXd& x);

/// Rotation average over an SO(2) acting in the coordinate plane (axis_i, axis_j).
struct KAverage {
    int axis_i = 0;
    int axis_j = 1;
    int nodes = 256;
};

/// Finite sum of profile bumps on R^d, optionally averaged over a rotation.
struct BumpSum {
    std::vector<BumpND> terms;
    std::vector<KAverage> average;  // empty or one entry
    bool k_invariant = false;

    int dim() const;
    bool empty() const { return terms.empty(); }
};

BumpSum single(const BumpND& b);
BumpSum scaled(const BumpSum& f, double factor);
BumpSum operator+(const BumpSum& a, const BumpSum& b);

double eval(const BumpSum& f, const Eigen::VectorXd& x);

/// Box containing the support (before averaging it is the union of balls).
void support_box(const BumpSum& f, Eigen::VectorXd& lo, Eigen::VectorXd& hi);

/// Largest |x| on the support.
double support_radius(const BumpSum& f);

/// D_x = (1 / (2 pi^2 alpha^2)) (d^2/dx_1^2 + d^2/dx_2^2) on R^3, in closed form.
double apply_Dx(const BumpND& b, double alpha, const Eigen::VectorXd& x);
double apply_Dx(const BumpSum& f, double alpha, const Eigen::VectorXd& x);

}  // namespace tracekit
