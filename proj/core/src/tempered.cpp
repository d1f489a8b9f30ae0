#include <cmath>

#include "tracekit/orbits/orbit_measure.hpp"
#include "tracekit/util/error.hpp"
#include "tracekit/util/fit.hpp"
#include "tracekit/util/parallel.hpp"

namespace tracekit {

std::string verdict_name(const TemperednessVerdict& v) {
    switch (v.kind) {
        case TemperednessVerdict::Kind::Tempered: return "Tempered(" + std::to_string(v.k) + ")";
        case TemperednessVerdict::Kind::NotTempered: return "NotTempered";
        case TemperednessVerdict::Kind::Inconclusive: return "Inconclusive";
    }
    return "?";
}

double tempered_partial(const OrbitMeasure& mu, int k, double eps, double r, const QuadratureSpec& q) {
    auto weight = [k](const Eigen::VectorXd& x) { return std::pow(1.0 + x.squaredNorm(), -k); };
    return integrate_orbit(mu, weight, eps, r, q).value;
}

TemperednessVerdict tempered_test(const OrbitMeasure& mu, int k_max, const RadialSchedule& s,
                                  const QuadratureSpec& q, const NumericPolicy& p) {
    const std::size_t n = s.r.size();
    if (k_max < 1) fail(ErrorCode::BadSchedule, "k_max must be at least 1");
    if (n < 4) fail(ErrorCode::BadSchedule, "schedule needs at least four cutoffs");
    for (std::size_t i = 0; i < n; ++i) {
        if (!(s.r[i] > 0.0) || (i > 0 && !(s.r[i] > s.r[i - 1])))
            fail(ErrorCode::BadSchedule, "outer cutoffs must be positive and strictly increasing");
    }
    const bool inner = !s.eps.empty();
    if (inner) {
        if (s.eps.size() != n) fail(ErrorCode::BadSchedule, "one inner cutoff per outer cutoff");
        for (std::size_t i = 0; i < n; ++i) {
            if (!(s.eps[i] > 0.0) || s.eps[i] >= s.r[i] || (i > 0 && !(s.eps[i] < s.eps[i - 1])))
                fail(ErrorCode::BadSchedule, "inner cutoffs must be positive and strictly decreasing");
        }
    } else if (mu.singular_origin) {
        fail(ErrorCode::BadSchedule, "a singular orbit measure needs shrinking inner cutoffs");
    }
    const double floor_eps = inner ? s.eps.back() : 0.0;

    auto changed = [&](const std::vector<double>& v) {
        const double a = v[n - 1], b = v[n - 2];
        return std::abs(a - b) > p.tempered_cauchy_rtol * std::max(std::abs(a), p.rel_err_floor);
    };

    TemperednessVerdict out;
    bool all_log = true;
    for (int k = 1; k <= k_max; ++k) {
        TemperedEvidence e;
        e.k = k;
        e.cutoff = s.r;
        e.eps = inner ? s.eps : std::vector<double>(n, 0.0);
        e.partial = parallel_map(n, [&](std::size_t i) { return tempered_partial(mu, k, e.eps[i], s.r[i], q); });
        e.partial_fixed = inner ? parallel_map(n, [&](std::size_t i) {
            return tempered_partial(mu, k, floor_eps, s.r[i], q);
        })
                                : e.partial;
        e.cauchy = !changed(e.partial) && !changed(e.partial_fixed);

        std::vector<double> x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = inner ? std::log(1.0 / e.eps[i]) : std::log(s.r[i]);
        const LinearFit fit = fit_line(x, e.partial);
        e.fit_slope = fit.slope;
        e.fit_r2 = fit.r2;
        const bool log_growth = fit.r2 >= p.log_fit_r2 && fit.slope > 0.0 &&
                                fit.slope > p.log_slope_factor * fit.resid_rms;
        all_log = all_log && log_growth;
        out.evidence.push_back(std::move(e));
        if (out.evidence.back().cauchy) {
            out.kind = TemperednessVerdict::Kind::Tempered;
            out.k = k;
            return out;
        }
    }
    out.kind = all_log ? TemperednessVerdict::Kind::NotTempered : TemperednessVerdict::Kind::Inconclusive;
    return out;
}

}  // namespace tracekit
