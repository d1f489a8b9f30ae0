#pragma once

#include "tracekit/testfn/bump.hpp"
#include "tracekit/testfn/chart_fn.hpp"

namespace tracekit {

/// phi(n, h) = phi1(n) phi2(h).
struct SeparableTestFn {
    BumpSum phi1;
    GroupChartFn phi2;

    double eval(const Eigen::VectorXd& n, const GroupElement& h) const;
    bool is_zero() const;
};

SeparableTestFn scaled(const SeparableTestFn& f, double factor);

/// Rotation average of a bump sum (returns a K-invariant sum).
BumpSum k_average(const BumpSum& f, const KAverage& k);

/// Conjugation average over K of a chart function.
GroupChartFn k_average(const GroupChartFn& f, int nodes);

}  // namespace tracekit
