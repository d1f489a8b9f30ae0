#include <cmath>

#include "trace_util.hpp"
#include "tracekit/testfn/fourier.hpp"
#include "tracekit/trace/trace.hpp"
#include "tracekit/util/error.hpp"

namespace tracekit {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;
constexpr double kLineScan = 40.0;

QuadratureSpec inner_spec(const QuadratureSpec& q) {
    QuadratureSpec s;
    s.nodes = q.nodes;
    s.panels = 2;
    s.max_refine = 10;
    s.rtol = std::max(q.rtol, 1e-10);
    s.atol = 1e-15;
    return s;
}

double smallest_singular_value(const Eigen::MatrixXd& m) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    return svd.singularValues().minCoeff();
}

}  // namespace

cplx stab_rep_value(const StabRep& rho, int component, std::span<const double> c) {
    const double x = c.empty() ? 0.0 : c[0];
    switch (rho.kind) {
        case StabRep::Kind::Trivial: return 1.0;
        case StabRep::Kind::LineChar: return std::polar(1.0, -kTwoPi * rho.s * x);
        case StabRep::Kind::TorusCharA: {
            const double sign = (component == 1 && (rho.eps & 1)) ? -1.0 : 1.0;
            return std::polar(sign, -kTwoPi * rho.s * x);
        }
        case StabRep::Kind::TorusCharB: return std::polar(1.0, -rho.n * x);
        case StabRep::Kind::SO2Char: return std::polar(1.0, rho.m * x);
    }
    return 1.0;
}

InducedRepDescriptor make_induced_rep(const SemidirectDescriptor& sd, const Eigen::VectorXd& xi, const StabRep& rho,
                                      const NumericPolicy& p) {
    InducedRepDescriptor rep;
    rep.sd = sd;
    rep.chi = character_point(sd, xi);
    rep.orbit = classify_orbit(sd, rep.chi, p);
    rep.stab = stabilizer(sd, rep.chi, p);
    rep.stab_rep = rho;
    rep.regular = rep.stab.compact;

    const StabilizerDescriptor& st = rep.stab;
    std::vector<std::vector<double>> samples;
    if (st.dimension == 0) {
        samples.push_back({});
    } else {
        for (double c : {-1.3, 0.0, 0.4, 2.1}) samples.push_back(std::vector<double>(st.dimension, c));
    }
    const double tol = 1e-8 * (1.0 + xi.norm());
    for (const auto& comp : st.components) {
        for (const auto& c : samples) {
            const GroupElement g = comp * st.param(c);
            const CharacterPoint moved = dual_action(sd, g, rep.chi);
            if ((moved.xi - xi).norm() > tol) {
                fail(ErrorCode::InvalidArgument, "stabilizer does not fix the character point");
            }
        }
    }

    const bool one_dim = st.dimension == 1;
    const bool compact_circle = one_dim && st.compact;
    switch (rho.kind) {
        case StabRep::Kind::Trivial: break;
        case StabRep::Kind::LineChar:
            if (!one_dim || st.compact) fail(ErrorCode::InvalidArgument, "line character needs a line stabilizer");
            break;
        case StabRep::Kind::TorusCharA:
            if (!one_dim || st.compact || st.components.size() != 2) {
                fail(ErrorCode::InvalidArgument, "torus A character needs a stabilizer of the form +-A");
            }
            break;
        case StabRep::Kind::TorusCharB:
        case StabRep::Kind::SO2Char:
            if (!compact_circle) fail(ErrorCode::InvalidArgument, "circle character needs a circle stabilizer");
            if (st.components.size() > 1 && (rho.m != 0 || rho.n != 0)) {
                fail(ErrorCode::InvalidArgument, "nontrivial circle characters do not extend to O(2)");
            }
            break;
    }
    return rep;
}

cplx stabilizer_integral(const InducedRepDescriptor& rep, const GroupChartFn& phi2, const Eigen::VectorXd& xi,
                         const QuadratureSpec& q) {
    const StabilizerDescriptor st = stabilizer(rep.sd, character_point(rep.sd, xi));
    if (st.dimension > 1) fail(ErrorCode::UnsupportedChart, "stabilizer integrals are one-dimensional at most");
    cplx total = 0.0;
    for (std::size_t j = 0; j < st.components.size(); ++j) {
        const GroupElement& comp = st.components[j];
        if (st.dimension == 0) {
            total += phi2.eval(comp) * stab_rep_value(rep.stab_rep, static_cast<int>(j), {}) * st.haar({});
            continue;
        }
        auto f = [&](double c) -> cplx {
            const double cc[1] = {c};
            const double v = phi2.eval(comp * st.param(cc));
            if (v == 0.0) return 0.0;
            return v * stab_rep_value(rep.stab_rep, static_cast<int>(j), cc) * st.haar(cc);
        };
        const ChartAxis& ax = st.axes.front();
        const double lo = std::isfinite(ax.lo) ? ax.lo : -kLineScan;
        const double hi = std::isfinite(ax.hi) ? ax.hi : kLineScan;
        const int samples = st.compact ? 512 : 2560;
        const QuadResult<cplx> r = detail::integrate_scanned<cplx>(f, lo, hi, samples, inner_spec(q));
        if (!r.converged) fail(ErrorCode::QuadratureDidNotConverge, "stabilizer integral did not converge");
        total += r.value;
    }
    return total;
}

namespace {

std::function<cplx(const Eigen::VectorXd&)> orbit_integrand(const InducedRepDescriptor& rep,
                                                            const SeparableTestFn& phi, const QuadratureSpec& q) {
    const double skip = 1e-16 * fourier_scale(phi.phi1);
    if (is_class_function(phi.phi2)) {
        const cplx c = stabilizer_integral(rep, phi.phi2, rep.chi.xi, q);
        return [&rep, &phi, c](const Eigen::VectorXd& xi) -> cplx {
            return c * fourier_fast(phi.phi1, xi, rep.sd.pairing);
        };
    }
    return [&rep, &phi, q, skip](const Eigen::VectorXd& xi) -> cplx {
        const cplx f1 = fourier_fast(phi.phi1, xi, rep.sd.pairing);
        if (std::abs(f1) <= skip) return 0.0;
        return f1 * stabilizer_integral(rep, phi.phi2, xi, q);
    };
}

void check_dims(const InducedRepDescriptor& rep, const SeparableTestFn& phi) {
    if (phi.phi1.dim() != rep.sd.n_dim) fail(ErrorCode::InvalidArgument, "phi1 lives on the wrong space");
}

}  // namespace

TraceResult trace_eq1(const InducedRepDescriptor& rep, const SeparableTestFn& phi, const QuadratureSpec& q,
                      const CutoffSchedule& cs, const NumericPolicy& p) {
    validate(cs);
    TraceResult res;
    if (phi.is_zero()) {
        for (double r : cs.r) res.table.push_back({r, 0.0, 0.0});
        res.verdict = Converged{0.0, 0.0};
        return res;
    }
    check_dims(rep, phi);
    const OrbitMeasure mu = orbit_measure(rep.sd, rep.orbit);
    const auto g = orbit_integrand(rep, phi, q);
    for (std::size_t i = 0; i < cs.r.size(); ++i) {
        double eps = cs.eps.empty() ? 0.0 : cs.eps[i];
        if (cs.eps.empty() && mu.singular_origin) eps = 1.0 / cs.r[i];
        const QuadResult<cplx> part = integrate_orbit_complex(mu, g, eps, cs.r[i], q);
        res.table.push_back({cs.r[i], part.value, part.err});
    }
    res.verdict = divergence_classify(res.table, p);
    return res;
}

TraceResult trace_compact(const InducedRepDescriptor& rep, const SeparableTestFn& phi, const QuadratureSpec& q,
                          const NumericPolicy& p) {
    if (!rep.stab.compact) fail(ErrorCode::NotCompactStabilizer, "trace_compact needs a compact stabilizer");
    TraceResult res;
    if (phi.is_zero()) {
        res.table.push_back({0.0, 0.0, 0.0});
        res.verdict = Converged{0.0, 0.0};
        return res;
    }
    check_dims(rep, phi);
    const OrbitMeasure mu = orbit_measure(rep.sd, rep.orbit);

    const RadialSchedule sched{{10.0, 100.0, 1000.0, 10000.0}, {}};
    const TemperednessVerdict tv = tempered_test(mu, 3, sched, q, p);
    res.diagnostics.push_back({"tempered_k", tv.kind == TemperednessVerdict::Kind::Tempered ? tv.k : -1});

    const double r = decay_radius(phi.phi1, p.fourier_decay_rtol) / smallest_singular_value(rep.sd.pairing);
    res.diagnostics.push_back({"radius", r});
    const QuadResult<cplx> v = integrate_orbit_complex(mu, orbit_integrand(rep, phi, q), 0.0, r, q);
    res.table.push_back({r, v.value, v.err});
    if (tv.kind != TemperednessVerdict::Kind::Tempered) {
        res.verdict = Inconclusive{"orbit measure is not tempered: " + verdict_name(tv)};
    } else {
        res.verdict = Converged{v.value, v.err};
    }
    return res;
}

}  // namespace tracekit
