#pragma once

#include <Eigen/Dense>
#include <complex>

#include "tracekit/testfn/bump.hpp"
#include "tracekit/util/policy.hpp"
#include "tracekit/util/quadrature.hpp"

namespace tracekit {

struct FourierValue {
    std::complex<double> value;
    double err = 0.0;
};

/// phi-hat(xi) = integral of phi(x) exp(-2 pi i <x, xi>_P) dx by tensor Gauss
/// quadrature over the support box with node doubling until successive estimates
/// agree to rtol times fourier_scale; throws QuadratureDidNotConverge.
FourierValue fourier(const BumpND& b, const Eigen::VectorXd& xi, const Eigen::MatrixXd& pairing,
                     const QuadratureSpec& q);
FourierValue fourier(const BumpSum& f, const Eigen::VectorXd& xi, const Eigen::MatrixXd& pairing,
                     const QuadratureSpec& q);

/// Transform of the unit radial profile in d dimensions at frequency magnitude k,
/// through the one-dimensional radial (Hankel) reduction.
double radial_profile_transform(int d, double k);

/// Same transform, interpolated from a cached table where available.
double radial_profile_transform_fast(int d, double k);

/// Fast transform of a bump sum via the radial reduction (with rotation
/// averaging where requested).
std::complex<double> fourier_fast(const BumpSum& f, const Eigen::VectorXd& xi, const Eigen::MatrixXd& pairing);

/// Frequency magnitude |P xi| beyond which |phi-hat| stays below rtol times its scale.
double decay_radius(const BumpSum& f, double rtol);

/// Sum of |amplitude| r^d F_d(0): a bound for |phi-hat| everywhere.
double fourier_scale(const BumpSum& f);

}  // namespace tracekit
