#pragma once

namespace tracekit {

/// Every numeric tolerance used by the library.
struct NumericPolicy {
    double group_tol = 1e-10;
    double algebra_tol = 1e-12;
    double unimodular_tol = 1e-8;
    double stabilizer_tol = 1e-10;

    double tempered_cauchy_rtol = 1e-6;
    double log_fit_r2 = 0.999;
    double log_slope_factor = 10.0;

    double converged_rtol = 1e-4;
    double converged_atol = 1e-13;

    /// Fourier magnitudes below this fraction of the peak are treated as decayed.
    double fourier_decay_rtol = 1e-10;

    double fit_condition_max = 1e3;
    double rel_err_floor = 1e-12;
};

const NumericPolicy& default_policy();

}  // namespace tracekit
