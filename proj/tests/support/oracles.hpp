#pragma once

// Reference computations written without the library's quadrature or bump code.

#include <cmath>
#include <functional>
#include <numbers>

namespace oracle {

inline double profile(double t) {
    if (std::abs(t) >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - t * t));
}

/// Composite Simpson rule with n (even) intervals.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 20000) {
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return s * h / 3.0;
}

/// Integral of the profile over [-1, 1].
inline double profile_integral() { return simpson(profile, -1.0, 1.0); }

/// Integral over R^d of p(|x| / r).
inline double bump_mass(int d, double r) {
    const double sphere = d == 1 ? 2.0 : d == 2 ? 2.0 * std::numbers::pi : 4.0 * std::numbers::pi;
    return sphere * std::pow(r, d) * simpson([d](double t) { return profile(t) * std::pow(t, d - 1); }, 0.0, 1.0);
}

/// Integral over R^d of p(|x| / r)^2.
inline double bump_l2(int d, double r) {
    const double sphere = d == 1 ? 2.0 : d == 2 ? 2.0 * std::numbers::pi : 4.0 * std::numbers::pi;
    return sphere * std::pow(r, d) *
           simpson([d](double t) { return profile(t) * profile(t) * std::pow(t, d - 1); }, 0.0, 1.0);
}

/// Second derivative of the profile by central differences.
inline double profile_d2_fd(double t, double h = 1e-4) {
    return (profile(t + h) - 2.0 * profile(t) + profile(t - h)) / (h * h);
}

}  // namespace oracle
