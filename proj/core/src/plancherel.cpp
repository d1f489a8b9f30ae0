#include <cmath>

#include "tracekit/groups/lie.hpp"
#include "tracekit/plancherel/plancherel.hpp"
#include "tracekit/util/error.hpp"
#include "tracekit/util/parallel.hpp"
#include "tracekit/util/quadrature.hpp"

namespace tracekit {

namespace {

constexpr int kPanelNodes = 16;

double pairing_volume() { return std::abs(sl2_trace_pairing().determinant()); }

struct CartanGrid {
    std::vector<double> x, w;
};

CartanGrid cartan_grid(double extent, int nodes_per_unit) {
    CartanGrid g;
    const int panels = std::max(1, static_cast<int>(std::lround(extent * nodes_per_unit / kPanelNodes)));
    composite_rule(-extent, 0.0, panels, kPanelNodes, g.x, g.w);
    composite_rule(0.0, extent, panels, kPanelNodes, g.x, g.w);
    return g;
}

double weighted(const CartanGrid& g, const std::vector<cplx>& vals, double power, double c, double& imag) {
    cplx total = 0.0;
    for (std::size_t i = 0; i < g.x.size(); ++i) total += g.w[i] * std::pow(std::abs(g.x[i]), power) * vals[i];
    imag += c * total.imag();
    return c * total.real();
}

PlancherelReport assemble(DensityMode mode, const DensityWeights& dw, double lhs, const Truncation& tr,
                          const CartanGrid& ug, const std::vector<cplx>& a, const CartanGrid& vg,
                          const std::vector<cplx>& b, const NumericPolicy& p) {
    PlancherelReport r;
    r.mode = mode;
    r.lhs = lhs;
    r.truncation = tr;
    r.density_fit = dw;
    r.rhs_a = weighted(ug, a, dw.p_a, dw.c_a, r.rhs_imag);
    r.rhs_b = weighted(vg, b, dw.p_b, dw.c_b, r.rhs_imag);
    r.rhs_total = r.rhs_a + r.rhs_b;
    r.rel_err = std::abs(r.lhs - r.rhs_total) / std::max(std::abs(r.lhs), p.rel_err_floor);
    return r;
}

}  // namespace

DensityWeights paper_weights() { return {1.0, 2.0, 1.0, 4.0}; }

DensityWeights fitted_weights(const WeylFit& fit) {
    const double det = pairing_volume();
    return {static_cast<double>(fit.p_a), 0.5 * det * fit.c_a, static_cast<double>(fit.p_b), det * fit.c_b};
}

PlancherelPair plancherel_verify_both(const SeparableTestFn& phi, const Truncation& tr, const WeylFit& fit,
                                      const TorusQuadrature& q, const NumericPolicy& p) {
    if (!(tr.s_max > 0.0) || tr.n_max < 0 || !(tr.u_max > 0.0) || !(tr.v_max > 0.0)) {
        fail(ErrorCode::InvalidArgument, "truncation parameters must be positive");
    }
    require_k_invariant(phi);
    const double lhs = phi.eval(Eigen::VectorXd::Zero(3), identity(Family::SL2R));
    const CartanGrid ug = cartan_grid(tr.u_max, q.cartan_nodes_per_unit);
    const CartanGrid vg = cartan_grid(tr.v_max, q.cartan_nodes_per_unit);
    const std::vector<cplx> a = parallel_map(ug.x.size(), [&](std::size_t i) {
        return split_dual_sum(split_profile(ug.x[i], phi, q, 1.0, p), tr.s_max);
    });
    const std::vector<cplx> b = parallel_map(vg.x.size(), [&](std::size_t i) {
        return compact_dual_sum(compact_profile(vg.x[i], phi, q, 1.0, p), tr.n_max);
    });
    PlancherelPair out;
    out.fitted = assemble(DensityMode::FittedWeights, fitted_weights(fit), lhs, tr, ug, a, vg, b, p);
    out.paper = assemble(DensityMode::PaperWeights, paper_weights(), lhs, tr, ug, a, vg, b, p);
    return out;
}

PlancherelReport plancherel_verify(const SeparableTestFn& phi, const Truncation& tr, DensityMode mode,
                                   const WeylFit& fit, const TorusQuadrature& q, const NumericPolicy& p) {
    const PlancherelPair both = plancherel_verify_both(phi, tr, fit, q, p);
    return mode == DensityMode::FittedWeights ? both.fitted : both.paper;
}

}  // namespace tracekit
