#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string_view>

#include "tracekit/util/policy.hpp"

namespace tracekit {

/// Runtime-sized real matrix of dimension at most 4, stored inline.
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, 4, 4>;
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, 4, 1>;
using cplx = std::complex<double>;

enum class Family { SL2R, SL3R, SO12, SO2, O11, O12, HEIS3, UNIP4 };

std::string_view family_name(Family f);
int matrix_dim(Family f);

struct AlgebraElement {
    Family family = Family::SL2R;
    Mat m;
};

struct GroupElement {
    Family family = Family::SL2R;
    Mat m;
};

/// Lorentz form diag(1, -1, ..., -1) of size n.
Mat lorentz_form(int n);

bool in_algebra(Family f, const Mat& m, double tol);
bool in_group(Family f, const Mat& m, double tol);

/// Validated constructors; throw NotInFamily.
AlgebraElement make_algebra(Family f, const Mat& m, const NumericPolicy& p = default_policy());
GroupElement make_group(Family f, const Mat& m, const NumericPolicy& p = default_policy());

GroupElement identity(Family f);
GroupElement operator*(const GroupElement& a, const GroupElement& b);
GroupElement inverse(const GroupElement& g);

/// Matrix exponential, scaling and squaring with a diagonal [6/6] Pade approximant.
Mat mat_exp(const Mat& x);
GroupElement mat_exp(const AlgebraElement& x);

// SL(2,R) building blocks.
GroupElement sl2_rotation(double theta);  // [[c,-s],[s,c]]
GroupElement sl2_a(double t);             // diag(e^t, e^-t)
GroupElement sl2_n(double x);             // [[1,x],[0,1]]

// SO0(1,2) building blocks in the coordinates (x0, x1, x2).
GroupElement so12_rotation(double theta);  // rotation of (x1, x2)
GroupElement so12_u(double z);
GroupElement so12_a(double t);             // boost of (x0, x2)

GroupElement so2_rotation(double theta);
GroupElement o11_boost(double t);

}  // namespace tracekit
