#include <cmath>

#include "tracekit/groups/lie.hpp"
#include "tracekit/plancherel/plancherel.hpp"
#include "tracekit/testfn/fourier.hpp"
#include "tracekit/util/error.hpp"
#include "tracekit/util/quadrature.hpp"

namespace tracekit {

namespace {

constexpr int kPanelNodes = 16;

int panel_count(int nodes, double scale) {
    return std::max(1, static_cast<int>(std::lround(nodes * scale / kPanelNodes)));
}

bool plane_free(const BumpSum& f) {
    for (const auto& t : f.terms) {
        if (t.center.size() != 3 || t.center(0) != 0.0 || t.center(1) != 0.0) return false;
    }
    return true;
}

cplx phi1_hat(const BumpSum& f, const Eigen::Vector3d& xi) {
    static const Eigen::MatrixXd pairing = sl2_trace_pairing();
    return fourier_fast(f, xi, pairing);
}

double trace_window(const GroupChartFn& phi2) {
    if (phi2.chart == GroupChart::Constant) {
        fail(ErrorCode::UnsupportedChart, "phi2 must be compactly supported on SL(2,R)");
    }
    const std::optional<double> b = sl2_trace_bound(phi2);
    if (!b) fail(ErrorCode::UnsupportedChart, "phi2 chart gives no trace bound");
    return 1.1 * std::acosh(std::max(1.0, 0.5 * *b)) + 1e-3;
}

double phi2_at_identity(const GroupChartFn& phi2) { return phi2.eval(identity(Family::SL2R)); }

}  // namespace

void require_k_invariant(const SeparableTestFn& phi) {
    if (phi.phi1.dim() != 3) fail(ErrorCode::InvalidArgument, "phi1 must live on sl(2,R)");
    if (!phi.phi1.k_invariant && !plane_free(phi.phi1)) {
        fail(ErrorCode::InvalidArgument, "phi1 must be invariant under Ad(K)");
    }
    const GroupChartFn& f = phi.phi2;
    if (!(f.k_invariant || f.conj_average_nodes > 0 || chart_is_conjugation_invariant(f.chart))) {
        fail(ErrorCode::InvalidArgument, "phi2 must be invariant under conjugation by K");
    }
}

SplitProfile split_profile(double u, const SeparableTestFn& phi, const TorusQuadrature& q, double node_scale,
                           const NumericPolicy& p) {
    if (u == 0.0) fail(ErrorCode::InvalidArgument, "u must be nonzero");
    require_k_invariant(phi);
    SplitProfile pr;
    pr.u = u;
    pr.phi2_e = phi2_at_identity(phi.phi2);
    const double k = decay_radius(phi.phi1, p.fourier_decay_rtol);
    const double ratio = k / (2.0 * std::abs(u));
    pr.x_window = std::sqrt(std::max(0.0, 0.5 * (ratio * ratio - 1.0)));
    pr.t_window = trace_window(phi.phi2);

    std::vector<double> xs, wx;
    if (pr.x_window > 0.0) {
        composite_rule(-pr.x_window, pr.x_window, panel_count(q.x_nodes, node_scale), kPanelNodes, xs, wx);
    }
    std::vector<cplx> hat(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        hat[i] = wx[i] * phi1_hat(phi.phi1, split_orbit_point(u, 0.0, xs[i]));
        pr.orbital += hat[i];
    }
    composite_rule(-pr.t_window, pr.t_window, panel_count(q.t_nodes, node_scale), kPanelNodes, pr.t, pr.w);
    pr.plus.assign(pr.t.size(), 0.0);
    pr.minus.assign(pr.t.size(), 0.0);
    GroupElement g = identity(Family::SL2R);
    for (std::size_t j = 0; j < pr.t.size(); ++j) {
        const double ep = std::exp(pr.t[j]), em = 1.0 / ep;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            // n_x a_t n_{-x}
            g.m << ep, xs[i] * (em - ep), 0.0, em;
            const double fp = phi.phi2.eval(g);
            g.m = -g.m;
            const double fm = phi.phi2.eval(g);
            pr.plus[j] += hat[i] * fp;
            pr.minus[j] += hat[i] * fm;
        }
    }
    return pr;
}

CompactProfile compact_profile(double v, const SeparableTestFn& phi, const TorusQuadrature& q, double node_scale,
                               const NumericPolicy& p) {
    if (v == 0.0) fail(ErrorCode::InvalidArgument, "v must be nonzero");
    require_k_invariant(phi);
    if (phi.phi2.chart == GroupChart::Constant) {
        fail(ErrorCode::UnsupportedChart, "phi2 must be compactly supported on SL(2,R)");
    }
    CompactProfile pr;
    pr.v = v;
    pr.phi2_e = phi2_at_identity(phi.phi2);
    const double k = decay_radius(phi.phi1, p.fourier_decay_rtol);
    const double ratio = k / (2.0 * std::abs(v));
    pr.r_window = 0.25 * std::acosh(std::max(1.0, ratio * ratio));

    std::vector<double> rs, wr;
    if (pr.r_window > 0.0) {
        composite_rule(0.0, pr.r_window, panel_count(q.r_nodes, node_scale), kPanelNodes, rs, wr);
    }
    std::vector<cplx> hat(rs.size());
    for (std::size_t i = 0; i < rs.size(); ++i) {
        hat[i] = wr[i] * 2.0 * M_PI * std::sinh(2.0 * rs[i]) * phi1_hat(phi.phi1, compact_orbit_point(v, 0.0, rs[i]));
        pr.orbital += hat[i];
    }
    const int m = std::max(8, static_cast<int>(std::lround(q.theta_nodes * node_scale)));
    pr.f.assign(static_cast<std::size_t>(m), 0.0);
    GroupElement g = identity(Family::SL2R);
    for (int j = 0; j < m; ++j) {
        const double th = 2.0 * M_PI * j / m;
        const double c = std::cos(th), s = std::sin(th);
        for (std::size_t i = 0; i < rs.size(); ++i) {
            // a_r k_theta a_{-r}, with k_theta in the form of B
            const double e2 = std::exp(2.0 * rs[i]);
            g.m << c, s * e2, -s / e2, c;
            pr.f[static_cast<std::size_t>(j)] += hat[i] * phi.phi2.eval(g);
        }
    }
    return pr;
}

cplx split_trace(const SplitProfile& pr, int eps, double s) {
    cplx total = 0.0;
    const double sign = eps == 1 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < pr.t.size(); ++j) {
        total += pr.w[j] * (pr.plus[j] + sign * pr.minus[j]) * std::polar(1.0, -2.0 * M_PI * s * pr.t[j]);
    }
    return total;
}

cplx compact_trace(const CompactProfile& pr, int n) {
    cplx total = 0.0;
    const std::size_t m = pr.f.size();
    for (std::size_t j = 0; j < m; ++j) {
        total += pr.f[j] * std::polar(1.0, -static_cast<double>(n) * 2.0 * M_PI * static_cast<double>(j) / m);
    }
    return total / static_cast<double>(m);
}

cplx split_dual_sum(const SplitProfile& pr, double smax) {
    // sum_eps leaves 2 F_+; int_{|s|<=smax} e^{-2 pi i s t} ds = sin(2 pi smax t) / (pi t)
    cplx total = 0.0;
    for (std::size_t j = 0; j < pr.t.size(); ++j) {
        const double t = pr.t[j];
        const double kernel = std::abs(t) < 1e-300 ? 2.0 * smax : std::sin(2.0 * M_PI * smax * t) / (M_PI * t);
        total += pr.w[j] * 2.0 * pr.plus[j] * kernel;
    }
    return total;
}

cplx compact_dual_sum(const CompactProfile& pr, int nmax) {
    cplx total = 0.0;
    for (int n = -nmax; n <= nmax; ++n) total += compact_trace(pr, n);
    return total;
}

TraceResult trace_piA(int eps, double s, double u, const SeparableTestFn& phi, const TorusQuadrature& q,
                      const NumericPolicy& p) {
    if (eps != 0 && eps != 1) fail(ErrorCode::InvalidArgument, "eps must be 0 or 1");
    TraceResult res;
    if (phi.is_zero()) {
        res.verdict = Converged{0.0, 0.0};
        res.table.push_back({s, 0.0, 0.0});
        return res;
    }
    const SplitProfile fine = split_profile(u, phi, q, 1.0, p);
    const SplitProfile coarse = split_profile(u, phi, q, 0.75, p);
    const cplx v = split_trace(fine, eps, s);
    const double err = std::abs(v - split_trace(coarse, eps, s));
    res.table.push_back({s, v, err});
    res.verdict = Converged{v, err};
    res.diagnostics = {{"x_window", fine.x_window}, {"t_window", fine.t_window}};
    return res;
}

TraceResult trace_piB(int n, double v, const SeparableTestFn& phi, const TorusQuadrature& q,
                      const NumericPolicy& p) {
    TraceResult res;
    if (phi.is_zero()) {
        res.verdict = Converged{0.0, 0.0};
        res.table.push_back({static_cast<double>(n), 0.0, 0.0});
        return res;
    }
    const CompactProfile fine = compact_profile(v, phi, q, 1.0, p);
    const CompactProfile coarse = compact_profile(v, phi, q, 0.75, p);
    const cplx val = compact_trace(fine, n);
    const double err = std::abs(val - compact_trace(coarse, n));
    res.table.push_back({static_cast<double>(n), val, err});
    res.verdict = Converged{val, err};
    res.diagnostics = {{"r_window", fine.r_window}};
    return res;
}

Eq10Result eq10_check(const TorusDescriptor& torus, const CartanElement& h, const SeparableTestFn& phi,
                      const Truncation& tr, const TorusQuadrature& q, const NumericPolicy& p) {
    if (h.torus != torus.id) fail(ErrorCode::FamilyMismatch, "Cartan element does not belong to the torus");
    Eq10Result out;
    if (phi.is_zero()) return out;
    cplx lhs, rhs, half;
    if (torus.id == TorusId::SplitA) {
        if (!(tr.s_max > 0.0)) fail(ErrorCode::InvalidArgument, "s_max must be positive");
        const SplitProfile pr = split_profile(h.param, phi, q, 1.0, p);
        lhs = pr.orbital * pr.phi2_e;
        rhs = 0.5 * split_dual_sum(pr, tr.s_max);
        half = 0.5 * split_dual_sum(pr, 0.5 * tr.s_max);
    } else {
        if (tr.n_max < 0) fail(ErrorCode::InvalidArgument, "n_max must be nonnegative");
        const CompactProfile pr = compact_profile(h.param, phi, q, 1.0, p);
        lhs = pr.orbital * pr.phi2_e;
        rhs = compact_dual_sum(pr, tr.n_max);
        half = compact_dual_sum(pr, tr.n_max / 2);
    }
    out.lhs = lhs.real();
    out.lhs_imag = lhs.imag();
    out.rhs = rhs.real();
    out.rhs_imag = rhs.imag();
    out.tail_estimate = std::abs(rhs - half);
    return out;
}

}  // namespace tracekit
