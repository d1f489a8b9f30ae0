#pragma once

#include <span>
#include <string_view>

#include "tracekit/groups/matrix.hpp"

namespace tracekit {

enum class Decomposition {
    SL2_KAM0U,   // coordinate lambda, density relative to dk dlambda dm dx
    SL3_KAM0U,   // coordinate lambda, density relative to dk dlambda dm dx
    SL2_KAN,     // coordinates (theta, t, x), a = diag(e^t, e^-t)
    SO12_KUA,    // coordinates (theta, z, t)
    SL2_A1G0,    // coordinate s of a1 = exp(s H)
};

struct HaarDensity {
    Decomposition decomposition;
};

std::string_view decomposition_name(Decomposition d);
int chart_dim(Decomposition d);

/// Density of Haar measure in the named coordinates; throws OutOfChart.
double haar_density_eval(const HaarDensity& d, std::span<const double> coords);

/// |det| of Ad(exp(s H)) restricted to the centralizer algebra of E.
double sl2_stabilizer_modulus(double s);

}  // namespace tracekit
