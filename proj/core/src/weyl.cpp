#include <Eigen/SVD>
#include <cmath>

#include "tracekit/groups/lie.hpp"
#include "tracekit/plancherel/plancherel.hpp"
#include "tracekit/testfn/fourier.hpp"
#include "tracekit/util/error.hpp"
#include "tracekit/util/quadrature.hpp"

namespace tracekit {

namespace {

constexpr int kPanelNodes = 16;

int panel_count(int nodes) { return std::max(1, (nodes + kPanelNodes - 1) / kPanelNodes); }

template <class J>
double cartan_moment(J&& orbital, double extent, int power, int nodes) {
    std::vector<double> x, w;
    composite_rule(-extent, 0.0, panel_count(nodes), kPanelNodes, x, w);
    composite_rule(0.0, extent, panel_count(nodes), kPanelNodes, x, w);
    double total = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) total += w[i] * std::pow(std::abs(x[i]), power) * orbital(x[i]);
    return total;
}

WeylFit evaluate(const std::vector<WeylRow>& rows, int pa, int pb, double ca, double cb) {
    WeylFit f;
    f.p_a = pa;
    f.p_b = pb;
    f.c_a = ca;
    f.c_b = cb;
    double scale = 0.0, worst = 0.0;
    for (const auto& r : rows) {
        scale = std::max(scale, std::abs(r.lhs));
        const double pred = ca * r.split[pa - 1] + cb * r.compact[pb - 1];
        worst = std::max(worst, std::abs(pred - r.lhs));
    }
    f.residual = scale > 0.0 ? worst / scale : worst;
    return f;
}

}  // namespace

double split_orbital_integral(const BumpSum& f, double u, const TorusQuadrature& q) {
    const double rf = support_radius(f);
    if (u == 0.0 || std::abs(u) >= rf) return 0.0;
    const double ratio = rf / std::abs(u);
    const double xw = std::sqrt(0.5 * (ratio * ratio - 1.0));
    std::vector<double> xs, wx;
    composite_rule(-xw, xw, panel_count(q.weyl_chart_nodes), kPanelNodes, xs, wx);
    const int na = q.weyl_angle_nodes;
    Eigen::VectorXd y(3);
    double total = 0.0;
    for (int a = 0; a < na; ++a) {
        const double th = M_PI * a / na;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            y = split_orbit_point(u, th, xs[i]);
            total += wx[i] * eval(f, y);
        }
    }
    return total / na;
}

double compact_orbital_integral(const BumpSum& f, double v, const TorusQuadrature& q) {
    const double rf = support_radius(f);
    if (v == 0.0 || std::abs(v) >= rf) return 0.0;
    const double ratio = rf / std::abs(v);
    const double rw = 0.25 * std::acosh(ratio * ratio);
    std::vector<double> rs, wr;
    composite_rule(0.0, rw, panel_count(q.weyl_chart_nodes), kPanelNodes, rs, wr);
    const int na = q.weyl_angle_nodes;
    Eigen::VectorXd y(3);
    double total = 0.0;
    for (int a = 0; a < na; ++a) {
        const double psi = M_PI * a / na;
        for (std::size_t i = 0; i < rs.size(); ++i) {
            y = compact_orbit_point(v, psi, rs[i]);
            total += wr[i] * 2.0 * std::sinh(2.0 * rs[i]) * eval(f, y);
        }
    }
    return total * M_PI / na;
}

WeylRow weyl_row(const BumpSum& f, const TorusQuadrature& q) {
    if (f.dim() != 3) fail(ErrorCode::InvalidArgument, "weyl_check needs functions on sl(2,R)");
    WeylRow row;
    QuadratureSpec direct;
    direct.rtol = 1e-9;
    row.lhs = fourier(f, Eigen::VectorXd::Zero(3), Eigen::MatrixXd::Identity(3, 3), direct).value.real();
    const double rf = support_radius(f);
    for (int p = 1; p <= 2; ++p) {
        row.split[p - 1] = cartan_moment([&](double u) { return split_orbital_integral(f, u, q); }, rf, p,
                                         q.weyl_cartan_nodes);
        row.compact[p - 1] = cartan_moment([&](double v) { return compact_orbital_integral(f, v, q); }, rf, p,
                                           q.weyl_cartan_nodes);
    }
    return row;
}

WeylReport weyl_check(const std::vector<BumpSum>& family, const TorusQuadrature& q, const NumericPolicy& p) {
    if (family.size() < 2) fail(ErrorCode::TooFewPoints, "weyl_check needs at least two functions");
    WeylReport rep;
    for (const auto& f : family) rep.rows.push_back(weyl_row(f, q));
    const Eigen::Index n = static_cast<Eigen::Index>(rep.rows.size());
    bool have_best = false;
    for (int pa = 1; pa <= 2; ++pa) {
        for (int pb = 1; pb <= 2; ++pb) {
            Eigen::MatrixXd m(n, 2);
            Eigen::VectorXd b(n);
            for (Eigen::Index i = 0; i < n; ++i) {
                const WeylRow& r = rep.rows[static_cast<std::size_t>(i)];
                m(i, 0) = r.split[pa - 1];
                m(i, 1) = r.compact[pb - 1];
                b(i) = r.lhs;
            }
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
            const Eigen::VectorXd c = svd.solve(b);
            const auto& sv = svd.singularValues();
            WeylFit fit = evaluate(rep.rows, pa, pb, c(0), c(1));
            fit.condition = sv(1) > 0.0 ? sv(0) / sv(1) : INFINITY;
            rep.fits.push_back(fit);
            if (!have_best || fit.residual < rep.best.residual) {
                rep.best = fit;
                have_best = true;
            }
        }
    }
    if (!(rep.best.condition <= p.fit_condition_max)) {
        fail(ErrorCode::IllConditionedFit, "Weyl fit condition number exceeds the policy limit");
    }
    const TorusDescriptor a = split_torus(), bt = compact_torus();
    rep.eta_prediction = evaluate(rep.rows, 2, 2, 4.0 / a.weyl_order, 4.0 / bt.weyl_order);
    const DensityWeights pw = paper_weights();
    const double det = std::abs(sl2_trace_pairing().determinant());
    rep.plancherel_prediction = evaluate(rep.rows, static_cast<int>(pw.p_a), static_cast<int>(pw.p_b),
                                         2.0 * pw.c_a / det, pw.c_b / det);
    return rep;
}

std::vector<BumpSum> default_weyl_family() {
    auto b = [](double x1, double x2, double x3, double r) { return single(BumpND{Eigen::Vector3d(x1, x2, x3), r, 1.0}); };
    return {b(0.0, 0.0, 0.0, 1.0),  b(1.5, 0.0, 0.0, 1.0),  b(0.0, 0.0, 2.0, 1.0),  b(0.0, 0.0, -1.5, 0.8),
            b(0.5, 0.5, 1.0, 1.2),  b(1.0, -1.0, 0.5, 0.7)};
}

}  // namespace tracekit
