#pragma once

#include <functional>
#include <span>
#include <vector>

#include "tracekit/orbits/orbits.hpp"
#include "tracekit/util/quadrature.hpp"

namespace tracekit {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

/// Invariant measure on one orbit, written in a chart whose first axis is radial:
/// for fixed remaining coordinates the set eps <= |embedding| <= R is a finite
/// union of closed-form intervals of the first coordinate.
struct OrbitMeasure {
    OrbitClass cls;
    int chart_dim = 0;
    std::vector<ChartAxis> axes;
    std::function<Eigen::VectorXd(std::span<const double>)> embedding;
    std::function<double(std::span<const double>)> density;
    std::function<std::vector<Interval>(std::span<const double> rest, double eps, double r)> shell;
    /// Box for the non-radial axes that contains |embedding| <= r.
    std::function<std::vector<Interval>(double r)> outer_box;
    /// Where the radial axis meets the smallest |embedding|, and its natural scale.
    std::function<double(std::span<const double> rest)> radial_center;
    double radial_scale = 1.0;
    /// Density is singular at the origin of N-hat (cone rays).
    bool singular_origin = false;
};

/// Throws NoInvariantMeasure or UnsupportedFamily.
OrbitMeasure orbit_measure(const SemidirectDescriptor& sd, const OrbitClass& cls);

/// Integral of g over the part of the orbit with eps <= |xi| <= r.
QuadResult<double> integrate_orbit(const OrbitMeasure& mu,
                                   const std::function<double(const Eigen::VectorXd&)>& g,
                                   double eps, double r, const QuadratureSpec& q);
QuadResult<cplx> integrate_orbit_complex(const OrbitMeasure& mu, const std::function<cplx(const Eigen::VectorXd&)>& g,
                                         double eps, double r, const QuadratureSpec& q);

struct TemperedEvidence {
    int k = 0;
    std::vector<double> cutoff;
    std::vector<double> eps;
    std::vector<double> partial;        // paired (R_i, eps_i)
    std::vector<double> partial_fixed;  // R_i with eps at its floor
    bool cauchy = false;
    double fit_slope = 0.0;
    double fit_r2 = 0.0;
};

struct TemperednessVerdict {
    enum class Kind { Tempered, NotTempered, Inconclusive };
    Kind kind = Kind::Inconclusive;
    int k = 0;
    std::vector<TemperedEvidence> evidence;
};

std::string verdict_name(const TemperednessVerdict& v);

struct RadialSchedule {
    std::vector<double> r;
    std::vector<double> eps;  // empty, or one inner cutoff per outer cutoff
};

/// I_k(R, eps) = integral of (1 + |xi|^2)^-k over eps <= |xi| <= R.
double tempered_partial(const OrbitMeasure& mu, int k, double eps, double r, const QuadratureSpec& q);

/// Throws BadSchedule.
TemperednessVerdict tempered_test(const OrbitMeasure& mu, int k_max, const RadialSchedule& s,
                                  const QuadratureSpec& q = {},
                                  const NumericPolicy& p = default_policy());

}  // namespace tracekit
