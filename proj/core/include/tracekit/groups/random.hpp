#pragma once

#include <random>

#include "tracekit/groups/matrix.hpp"

namespace tracekit {

/// Random element of the identity component, parameters drawn from [-scale, scale].
GroupElement random_group_element(Family f, std::mt19937_64& rng, double scale = 1.0);

/// Random Lie algebra element with coordinates in [-scale, scale].
AlgebraElement random_algebra_element(Family f, std::mt19937_64& rng, double scale = 1.0);

}  // namespace tracekit
