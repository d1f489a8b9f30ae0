#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "tracekit/orbits/semidirect.hpp"

namespace tracekit {

enum class OrbitLabel {
    Zero,
    TimelikeUpper,
    TimelikeLower,
    Timelike,
    ConeUpper,
    ConeLower,
    Cone,
    ConeRay,
    Spacelike,
    Circle,
    Line,
    Point,
    Surface,
    Generic,
    Hyperbolic,
    Elliptic,
    Nilpotent,
};

std::string_view label_name(OrbitLabel l);

struct OrbitClass {
    HFamily family = HFamily::SO12;
    OrbitLabel label = OrbitLabel::Zero;
    std::vector<double> invariants;
    int branch = 0;
    /// A representative point of the orbit.
    Eigen::VectorXd representative;
};

/// Throws UnsupportedFamily.
OrbitClass classify_orbit(const SemidirectDescriptor& sd, const CharacterPoint& xi,
                          const NumericPolicy& p = default_policy());

struct ChartAxis {
    double lo = 0.0;
    double hi = 0.0;
    bool periodic = false;
};

struct StabilizerDescriptor {
    bool compact = false;
    int dimension = 0;
    std::vector<ChartAxis> axes;
    std::function<GroupElement(std::span<const double>)> param;
    /// Haar density on the chart (angles carry 1/(2 pi), so compact groups have mass 1).
    std::function<double(std::span<const double>)> haar;
    /// Component representatives; every element is component * param(c).
    std::vector<GroupElement> components;
    std::string description;
};

/// Throws UnsupportedFamily.
StabilizerDescriptor stabilizer(const SemidirectDescriptor& sd, const CharacterPoint& xi,
                                const NumericPolicy& p = default_policy());

}  // namespace tracekit
