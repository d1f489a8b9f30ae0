#include <algorithm>
#include <cmath>
#include <map>

#include "tracekit/testfn/bump.hpp"
#include "tracekit/testfn/fourier.hpp"
#include "tracekit/trace/trace.hpp"
#include "tracekit/util/error.hpp"
#include "tracekit/util/parallel.hpp"

namespace tracekit {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

struct AxisRule {
    std::vector<double> x, w;
};

AxisRule axis_rule(double lo, double hi, int n) {
    AxisRule r;
    const GaussRule& g = gauss_legendre(n);
    const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
    for (int i = 0; i < n; ++i) {
        r.x.push_back(mid + half * g.x[i]);
        r.w.push_back(half * g.w[i]);
    }
    return r;
}

/// Partial sums S(i, k) of w f(x) exp(2 pi i alpha x1) over the x1 axis, so that
/// the x-integral against exp(-2 pi i alpha [x, (z, 1, z)]) costs O(n^2) per z.
struct PhaseGrid {
    AxisRule a0, a2;
    Eigen::MatrixXcd s;
    double max_abs = 0.0;

    template <class F>
    PhaseGrid(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi, int n, double alpha, F&& f) {
        a0 = axis_rule(lo(0), hi(0), n);
        const AxisRule a1 = axis_rule(lo(1), hi(1), n);
        a2 = axis_rule(lo(2), hi(2), n);
        std::vector<cplx> ph(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) ph[j] = std::polar(a1.w[j], kTwoPi * alpha * a1.x[j]);
        struct Row {
            std::vector<cplx> v;
            double m = 0.0;
        };
        const auto rows = parallel_map(static_cast<std::size_t>(n), [&](std::size_t i) {
            Row row;
            row.v.assign(static_cast<std::size_t>(n), 0.0);
            Eigen::VectorXd x(3);
            x(0) = a0.x[i];
            for (int k = 0; k < n; ++k) {
                x(2) = a2.x[k];
                cplx acc = 0.0;
                for (int j = 0; j < n; ++j) {
                    x(1) = a1.x[j];
                    const double v = f(x);
                    row.m = std::max(row.m, std::abs(v));
                    acc += v * ph[j];
                }
                row.v[k] = acc * a0.w[i] * a2.w[k];
            }
            return row;
        });
        s.resize(n, n);
        for (int i = 0; i < n; ++i) {
            for (int k = 0; k < n; ++k) s(i, k) = rows[i].v[k];
            max_abs = std::max(max_abs, rows[i].m);
        }
    }

    cplx at(double alpha, double z) const {
        const int n = static_cast<int>(s.rows());
        Eigen::VectorXcd b(n);
        for (int k = 0; k < n; ++k) b(k) = std::polar(1.0, kTwoPi * alpha * z * a2.x[k]);
        const Eigen::VectorXcd sb = s * b;
        cplx total = 0.0;
        for (int i = 0; i < n; ++i) total += std::polar(1.0, -kTwoPi * alpha * z * a0.x[i]) * sb(i);
        return total;
    }
};

double chart_fn_max(const GroupChartFn& f) {
    double m = std::abs(f.amplitude);
    for (const auto& fac : f.factors) {
        if (fac) m *= std::abs(fac->amplitude) * std::exp(-1.0);
    }
    return m;
}

QuadratureSpec line_spec(const QuadratureSpec& q) {
    QuadratureSpec s = q;
    s.max_refine = std::max(10, q.max_refine);
    s.rtol = std::max(q.rtol, 1e-9);
    s.atol = 1e-17;
    return s;
}

}  // namespace

TraceResult trace_r3_so12(double s, double alpha, const SeparableTestFn& phi_in, const QuadratureSpec& q,
                          const So12TraceOptions& opt) {
    if (!(alpha > 0.0)) fail(ErrorCode::InvalidArgument, "alpha must be positive");
    TraceResult res;
    if (phi_in.is_zero()) {
        res.table.push_back({0.0, 0.0, 0.0});
        res.verdict = Converged{0.0, 0.0};
        res.diagnostics = {{"bound", 0.0}, {"max_Dx", 0.0}};
        return res;
    }
    if (phi_in.phi1.dim() != 3) fail(ErrorCode::InvalidArgument, "phi1 must live on R^3");
    if (phi_in.phi2.chart != GroupChart::SO12_KUA && phi_in.phi2.chart != GroupChart::SO12_CONJ) {
        fail(ErrorCode::UnsupportedChart, "phi2 must be written in an SO0(1,2) chart");
    }
    SeparableTestFn phi = phi_in;
    if (!phi.phi1.k_invariant) phi.phi1 = k_average(phi.phi1, KAverage{1, 2, 256});
    if (!phi.phi2.k_invariant) phi.phi2 = k_average(phi.phi2, 64);

    const auto bound = so12_trace_bound(phi.phi2);
    if (!bound) fail(ErrorCode::InvalidArgument, "phi2 needs bounded support in a trace-controlling coordinate");
    const double t_window = 1.1 * std::acosh(std::max(1.0, 0.5 * (*bound - 1.0))) + 1e-3;
    const double k_decay = decay_radius(phi.phi1, opt.z_decay_rtol);
    const double z_window = std::sqrt(std::max(0.0, 0.5 * ((k_decay / alpha) * (k_decay / alpha) - 1.0))) + 1.0;

    std::map<std::pair<double, double>, cplx> g_memo;
    const bool class_fn = is_class_function(phi.phi2);
    auto g_s = [&](double z, double t_max) {
        if (class_fn) z = 0.0;
        const auto key = std::make_pair(z, t_max);
        if (const auto it = g_memo.find(key); it != g_memo.end()) return it->second;
        const GroupElement uz = so12_u(z), umz = so12_u(-z);
        auto f = [&](double t) -> cplx {
            const double v = phi.phi2.eval(uz * so12_a(t) * umz);
            if (v == 0.0) return 0.0;
            return std::polar(v, -kTwoPi * s * t);
        };
        const QuadResult<cplx> r = integrate<cplx>(f, -t_max, t_max, line_spec(q));
        if (!r.converged) fail(ErrorCode::QuadratureDidNotConverge, "t-integral did not converge");
        g_memo.emplace(key, r.value);
        return r.value;
    };

    Eigen::VectorXd lo, hi;
    support_box(phi.phi1, lo, hi);
    const double width = std::max(hi(0) - lo(0), hi(2) - lo(2));
    auto nodes_for = [&](double z_max) {
        const int need = static_cast<int>(std::ceil(2.5 * alpha * z_max * width)) + 24;
        return std::clamp(std::max(opt.x_nodes, need), 8, std::max(8, opt.max_x_nodes));
    };
    const int n = nodes_for(z_window);
    auto dx = [&](const Eigen::VectorXd& x) { return apply_Dx(phi.phi1, alpha, x); };
    const PhaseGrid fine(lo, hi, n, alpha, dx);
    const PhaseGrid coarse(lo, hi, (3 * n) / 4, alpha, dx);

    const double theta_max = std::atan(z_window);
    auto regularized = [&](const PhaseGrid& grid) {
        auto f = [&](double th) -> cplx {
            const double z = std::tan(th);
            return -0.5 * grid.at(alpha, z) * g_s(z, t_window);
        };
        const QuadResult<cplx> r = integrate<cplx>(f, -theta_max, theta_max, line_spec(q));
        if (!r.converged) fail(ErrorCode::QuadratureDidNotConverge, "z-integral did not converge");
        return r;
    };
    const QuadResult<cplx> v_fine = regularized(fine);
    const QuadResult<cplx> v_coarse = regularized(coarse);
    const double err = std::abs(v_fine.value - v_coarse.value) + v_fine.err;
    res.table.push_back({z_window, v_fine.value, err});
    res.verdict = Converged{v_fine.value, err};

    const double vol = (hi - lo).prod();
    const double max_phi2 = chart_fn_max(phi.phi2);
    const double c = 0.5 * vol * 2.0 * t_window * fine.max_abs * max_phi2;
    res.diagnostics.push_back({"bound", M_PI * c});
    res.diagnostics.push_back({"max_Dx", fine.max_abs * max_phi2});
    res.diagnostics.push_back({"t_window", t_window});
    res.diagnostics.push_back({"z_window", z_window});
    res.diagnostics.push_back({"x_nodes", n});

    if (opt.brute_force) {
        const double tc = opt.brute_force_factor * t_window;
        const double zc = opt.brute_force_factor * z_window;
        const PhaseGrid plain(lo, hi, nodes_for(zc), alpha, [&](const Eigen::VectorXd& x) { return eval(phi.phi1, x); });
        auto f = [&](double z) -> cplx { return plain.at(alpha, z) * g_s(z, tc); };
        const QuadResult<cplx> r = integrate<cplx>(f, -zc, zc, line_spec(q));
        res.diagnostics.push_back({"brute_force_re", r.value.real()});
        res.diagnostics.push_back({"brute_force_im", r.value.imag()});
        res.diagnostics.push_back({"brute_force_err", r.err});
    }
    return res;
}

}  // namespace tracekit
