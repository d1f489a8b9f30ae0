#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tracekit/groups/matrix.hpp"
#include "tracekit/util/policy.hpp"

namespace tracekit {

/// Increasing outer cutoffs, optionally paired with decreasing inner cutoffs.
struct CutoffSchedule {
    std::vector<double> r;
    std::vector<double> eps;

    static CutoffSchedule decades(int first_exp, int last_exp);
};

/// Throws BadSchedule unless r is strictly increasing with at least four entries
/// and eps (if present) is strictly decreasing, positive and of the same length.
void validate(const CutoffSchedule& cs);

struct TraceRow {
    double cutoff = 0.0;
    cplx value;
    double err = 0.0;
};

struct Converged {
    cplx value;
    double err = 0.0;
};

struct LogDivergent {
    double slope = 0.0;
    double intercept = 0.0;
    double fit_r2 = 0.0;
};

struct Inconclusive {
    std::string reason;
};

using TraceVerdict = std::variant<Converged, LogDivergent, Inconclusive>;

std::string verdict_name(const TraceVerdict& v);

struct TraceResult {
    TraceVerdict verdict = Inconclusive{};
    std::vector<TraceRow> table;
    /// Named scalar side results (bounds, reference values, windows).
    std::vector<std::pair<std::string, double>> diagnostics;

    bool converged() const { return std::holds_alternative<Converged>(verdict); }
    bool log_divergent() const { return std::holds_alternative<LogDivergent>(verdict); }
    /// Converged value; throws InvalidArgument otherwise.
    cplx value() const;
    double diagnostic(const std::string& name) const;
};

/// Classifies partial values against log(cutoff); throws TooFewPoints.
///
/// The sequence is Converged when the last two rows agree within
/// converged_rtol (relative) plus their error estimates, LogDivergent when a
/// line in log R fits with R^2 >= log_fit_r2 and |slope| exceeds
/// log_slope_factor times the residual RMS, and Inconclusive otherwise.
TraceVerdict divergence_classify(const std::vector<TraceRow>& rows, const NumericPolicy& p = default_policy());

}  // namespace tracekit
