#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "tracekit/util/error.hpp"
#include "tracekit/util/quadrature.hpp"

namespace tracekit::detail {

/// Integral over [lo, hi] of a function with compact (possibly disconnected)
/// support: a uniform scan finds the nonzero runs, each run is integrated
/// adaptively over its samples padded by one step.
template <class T, class F>
QuadResult<T> integrate_scanned(F&& f, double lo, double hi, int samples, const QuadratureSpec& q) {
    QuadResult<T> out;
    out.converged = true;
    const double h = (hi - lo) / samples;
    std::vector<bool> nz(static_cast<std::size_t>(samples) + 1);
    for (int i = 0; i <= samples; ++i) nz[static_cast<std::size_t>(i)] = std::abs(f(lo + i * h)) > 0.0;
    int i = 0;
    while (i <= samples) {
        if (!nz[static_cast<std::size_t>(i)]) {
            ++i;
            continue;
        }
        int j = i;
        while (j + 1 <= samples && nz[static_cast<std::size_t>(j + 1)]) ++j;
        const double a = std::max(lo, lo + (i - 1) * h);
        const double b = std::min(hi, lo + (j + 1) * h);
        const QuadResult<T> part = integrate<T>(f, a, b, q);
        out.value += part.value;
        out.err += part.err;
        out.converged = out.converged && part.converged;
        i = j + 1;
    }
    return out;
}

}  // namespace tracekit::detail
