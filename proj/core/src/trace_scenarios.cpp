#include <cmath>

#include "trace_util.hpp"
#include "tracekit/groups/lie.hpp"
#include "tracekit/testfn/bump.hpp"
#include "tracekit/testfn/fourier.hpp"
#include "tracekit/trace/trace.hpp"
#include "tracekit/util/error.hpp"

namespace tracekit {

namespace {

QuadratureSpec line_spec(const QuadratureSpec& q) {
    QuadratureSpec s = q;
    s.panels = std::max(2, q.panels);
    s.max_refine = std::max(10, q.max_refine);
    s.rtol = std::max(q.rtol, 1e-12);
    s.atol = 1e-16;
    return s;
}

/// Integral of one chart factor against a weight over its support.
template <class W>
double factor_integral(const ChartFactor& f, W&& weight, const QuadratureSpec& q) {
    auto g = [&](double c) { return f.amplitude * bump_profile((c - f.center) / f.radius) * weight(c); };
    const QuadResult<double> r = integrate<double>(g, f.center - f.radius, f.center + f.radius, line_spec(q));
    if (!r.converged) fail(ErrorCode::QuadratureDidNotConverge, "chart factor integral did not converge");
    return r.value;
}

const ChartFactor& required(const GroupChartFn& f, int i, const char* what) {
    if (!f.factors[static_cast<std::size_t>(i)]) {
        fail(ErrorCode::InvalidArgument, std::string("phi2 needs compact support in ") + what);
    }
    return *f.factors[static_cast<std::size_t>(i)];
}

double optional_value(const GroupChartFn& f, int i, double c) {
    const auto& fac = f.factors[static_cast<std::size_t>(i)];
    if (!fac) return 1.0;
    return fac->amplitude * bump_profile((c - fac->center) / fac->radius);
}

/// Integral over u in [-L, L] of h(e^u) split at u = 0 and cut above the decay point.
QuadResult<cplx> log_line(const std::function<cplx(double)>& h, double log_r, double log_decay,
                          const QuadratureSpec& q) {
    QuadResult<cplx> out;
    out.converged = true;
    const double top = std::min(log_r, log_decay);
    const std::vector<std::pair<double, double>> pieces = {{-log_r, std::min(0.0, top)}, {0.0, top}};
    for (const auto& [a, b] : pieces) {
        if (!(b > a)) continue;
        const QuadResult<cplx> r = integrate<cplx>([&](double u) { return h(std::exp(u)); }, a, b, line_spec(q));
        out.value += r.value;
        out.err += r.err;
        out.converged = out.converged && r.converged;
    }
    return out;
}

TraceResult zero_result(const CutoffSchedule& cs) {
    TraceResult res;
    for (double r : cs.r) res.table.push_back({r, 0.0, 0.0});
    res.verdict = Converged{0.0, 0.0};
    return res;
}

}  // namespace

double sln_m0u_integral(const GroupChartFn& phi2, int n, const QuadratureSpec& q) {
    auto one = [](double) { return 1.0; };
    if (n == 2) {
        if (phi2.chart != GroupChart::SL2_KAM0U) fail(ErrorCode::UnsupportedChart, "n = 2 needs the sl2_kam0u chart");
        if (phi2.factors[0]) fail(ErrorCode::InvalidArgument, "phi2 must be K-invariant (no theta factor)");
        return phi2.amplitude * optional_value(phi2, 1, 1.0) * factor_integral(required(phi2, 2, "x"), one, q);
    }
    if (n == 3) {
        if (phi2.chart != GroupChart::SL3_KAM0U) fail(ErrorCode::UnsupportedChart, "n = 3 needs the sl3_kam0u chart");
        double v = phi2.amplitude * optional_value(phi2, 0, 1.0);
        if (phi2.factors[1]) v *= factor_integral(*phi2.factors[1], one, q) / (2.0 * M_PI);
        v *= factor_integral(required(phi2, 2, "t_m"), [](double t) { return std::exp(2.0 * t); }, q);
        v *= factor_integral(required(phi2, 3, "y_m"), one, q);
        v *= factor_integral(required(phi2, 4, "x1"), one, q);
        v *= factor_integral(required(phi2, 5, "x2"), one, q);
        return v;
    }
    fail(ErrorCode::InvalidArgument, "trace_rn_sln supports n = 2 and n = 3");
}

TraceResult trace_rn_sln(const SeparableTestFn& phi, int n, const CutoffSchedule& cs, const QuadratureSpec& q,
                         const NumericPolicy& p) {
    validate(cs);
    if (n != 2 && n != 3) fail(ErrorCode::InvalidArgument, "trace_rn_sln supports n = 2 and n = 3");
    if (phi.is_zero()) return zero_result(cs);
    if (phi.phi1.dim() != n) fail(ErrorCode::InvalidArgument, "phi1 must live on R^n");
    const double g = sln_m0u_integral(phi.phi2, n, q);
    const Eigen::MatrixXd pairing = Eigen::MatrixXd::Identity(n, n);
    const double log_decay = std::log(decay_radius(phi.phi1, p.fourier_decay_rtol)) + 0.5;
    auto h = [&](double lambda) -> cplx {
        Eigen::VectorXd xi = Eigen::VectorXd::Zero(n);
        xi(0) = lambda;
        cplx v = fourier_fast(phi.phi1, xi, pairing);
        xi(0) = -lambda;
        v += fourier_fast(phi.phi1, xi, pairing);
        return v;
    };
    TraceResult res;
    for (double r : cs.r) {
        const QuadResult<cplx> part = log_line(h, std::log(r), log_decay, q);
        res.table.push_back({r, g * part.value, std::abs(g) * part.err});
    }
    res.verdict = divergence_classify(res.table, p);
    res.diagnostics.push_back({"m0u_integral", g});
    res.diagnostics.push_back({"phi1_hat_0", fourier_fast(phi.phi1, Eigen::VectorXd::Zero(n), pairing).real()});
    return res;
}

double g0_integral(const GroupChartFn& phi2, const QuadratureSpec& q) {
    double total = 0.0;
    for (double sign : {1.0, -1.0}) {
        auto f = [&](double x) {
            GroupElement g = sl2_n(x);
            g.m *= sign;
            return phi2.eval(g);
        };
        const QuadResult<double> r = detail::integrate_scanned<double>(f, -64.0, 64.0, 4096, line_spec(q));
        if (!r.converged) fail(ErrorCode::QuadratureDidNotConverge, "G0 integral did not converge");
        total += r.value;
    }
    return total;
}

TraceResult nilpotent_divergence_sl2(const SeparableTestFn& phi, const CutoffSchedule& cs, const QuadratureSpec& q,
                                     const NumericPolicy& p) {
    validate(cs);
    if (phi.is_zero()) return zero_result(cs);
    if (phi.phi1.dim() != 3) fail(ErrorCode::InvalidArgument, "phi1 must live on sl(2,R)");
    const double g = g0_integral(phi.phi2, q);
    const Eigen::MatrixXd pairing = sl2_trace_pairing();
    const Eigen::VectorXd e = sl2_to_coords(sl2_E());
    const double scale = (pairing * e).norm();
    const double log_decay = std::log(decay_radius(phi.phi1, p.fourier_decay_rtol) / scale) + 0.5;
    auto h = [&](double mu) -> cplx { return fourier_fast(phi.phi1, mu * e, pairing); };
    TraceResult res;
    for (double r : cs.r) {
        const QuadResult<cplx> part = log_line(h, std::log(r), log_decay, q);
        res.table.push_back({r, g * part.value, std::abs(g) * part.err});
    }
    res.verdict = divergence_classify(res.table, p);
    res.diagnostics.push_back({"g0_integral", g});
    res.diagnostics.push_back({"phi1_hat_0", fourier_fast(phi.phi1, Eigen::VectorXd::Zero(3), pairing).real()});
    return res;
}

}  // namespace tracekit
