#pragma once

#include <vector>

namespace tracekit {

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    double resid_rms = 0.0;
};

/// Least-squares line y = slope * x + intercept.
LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace tracekit
