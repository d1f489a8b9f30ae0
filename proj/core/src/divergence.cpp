#include "tracekit/trace/divergence.hpp"

#include <cmath>
#include <algorithm>

#include "tracekit/util/error.hpp"
#include "tracekit/util/fit.hpp"

namespace tracekit {

CutoffSchedule CutoffSchedule::decades(int first_exp, int last_exp) {
    CutoffSchedule cs;
    for (int e = first_exp; e <= last_exp; ++e) cs.r.push_back(std::pow(10.0, e));
    return cs;
}

void validate(const CutoffSchedule& cs) {
    if (cs.r.size() < 4) fail(ErrorCode::BadSchedule, "cutoff schedule needs at least four points");
    for (std::size_t i = 0; i < cs.r.size(); ++i) {
        if (!(cs.r[i] > 0.0) || !std::isfinite(cs.r[i])) fail(ErrorCode::BadSchedule, "cutoffs must be positive");
        if (i > 0 && !(cs.r[i] > cs.r[i - 1])) fail(ErrorCode::BadSchedule, "cutoffs must increase strictly");
    }
    if (cs.eps.empty()) return;
    if (cs.eps.size() != cs.r.size()) fail(ErrorCode::BadSchedule, "one inner cutoff per outer cutoff");
    for (std::size_t i = 0; i < cs.eps.size(); ++i) {
        if (!(cs.eps[i] > 0.0)) fail(ErrorCode::BadSchedule, "inner cutoffs must be positive");
        if (i > 0 && !(cs.eps[i] < cs.eps[i - 1])) fail(ErrorCode::BadSchedule, "inner cutoffs must decrease");
        if (!(cs.eps[i] < cs.r[i])) fail(ErrorCode::BadSchedule, "inner cutoff must be below the outer one");
    }
}

std::string verdict_name(const TraceVerdict& v) {
    if (std::holds_alternative<Converged>(v)) return "Converged";
    if (std::holds_alternative<LogDivergent>(v)) return "LogDivergent";
    return "Inconclusive";
}

cplx TraceResult::value() const {
    if (const auto* c = std::get_if<Converged>(&verdict)) return c->value;
    fail(ErrorCode::InvalidArgument, "trace did not converge: " + verdict_name(verdict));
}

double TraceResult::diagnostic(const std::string& name) const {
    for (const auto& [k, v] : diagnostics) {
        if (k == name) return v;
    }
    fail(ErrorCode::InvalidArgument, "no diagnostic named " + name);
}

TraceVerdict divergence_classify(const std::vector<TraceRow>& rows, const NumericPolicy& p) {
    if (rows.size() < 4) fail(ErrorCode::TooFewPoints, "divergence classification needs at least four rows");
    const TraceRow& last = rows.back();
    const TraceRow& prev = rows[rows.size() - 2];
    const double diff = std::abs(last.value - prev.value);
    const double tol = p.converged_rtol * std::abs(last.value) + last.err + prev.err + p.converged_atol;
    if (diff <= tol) return Converged{last.value, std::max(diff, last.err)};

    std::vector<double> x, re, im;
    for (const auto& r : rows) {
        x.push_back(std::log(r.cutoff));
        re.push_back(r.value.real());
        im.push_back(r.value.imag());
    }
    auto spread = [](const std::vector<double>& v) {
        const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
        return *hi - *lo;
    };
    const LinearFit f = fit_line(x, spread(re) >= spread(im) ? re : im);
    if (f.r2 >= p.log_fit_r2 && std::abs(f.slope) > p.log_slope_factor * f.resid_rms) {
        return LogDivergent{f.slope, f.intercept, f.r2};
    }
    return Inconclusive{"neither settled nor logarithmic (fit R^2 = " + std::to_string(f.r2) + ")"};
}

}  // namespace tracekit
