#include "tracekit/testfn/separable.hpp"

#include <algorithm>
#include <cmath>

#include "tracekit/util/error.hpp"

namespace tracekit {

double SeparableTestFn::eval(const Eigen::VectorXd& n, const GroupElement& h) const {
    const double a = tracekit::eval(phi1, n);
    if (a == 0.0) return 0.0;
    return a * phi2.eval(h);
}

bool SeparableTestFn::is_zero() const {
    return phi1.empty() || phi2.amplitude == 0.0;
}

SeparableTestFn scaled(const SeparableTestFn& f, double factor) {
    SeparableTestFn g = f;
    g.phi1 = scaled(f.phi1, factor);
    return g;
}

BumpSum k_average(const BumpSum& f, const KAverage& k) {
    if (f.empty()) return f;
    const int d = f.dim();
    if (k.axis_i == k.axis_j || k.axis_i < 0 || k.axis_j < 0 || k.axis_i >= d || k.axis_j >= d) {
        fail(ErrorCode::InvalidArgument, "k_average: invalid rotation plane");
    }
    if (k.nodes < 4) fail(ErrorCode::InvalidArgument, "k_average: at least 4 nodes required");
    if (!f.average.empty()) {
        const KAverage& a = f.average.front();
        const bool same = std::min(a.axis_i, a.axis_j) == std::min(k.axis_i, k.axis_j) &&
                          std::max(a.axis_i, a.axis_j) == std::max(k.axis_i, k.axis_j);
        if (!same) fail(ErrorCode::InvalidArgument, "k_average: sum is averaged over another plane");
        return f;
    }
    BumpSum g = f;
    bool on_axis = true;
    for (const auto& t : f.terms) {
        if (std::abs(t.center(k.axis_i)) > 0.0 || std::abs(t.center(k.axis_j)) > 0.0) on_axis = false;
    }
    if (!on_axis) g.average.push_back(k);
    g.k_invariant = true;
    return g;
}

GroupChartFn k_average(const GroupChartFn& f, int nodes) {
    if (nodes < 4) fail(ErrorCode::InvalidArgument, "k_average: at least 4 nodes required");
    GroupChartFn g = f;
    if (!chart_is_conjugation_invariant(f.chart)) g.conj_average_nodes = nodes;
    g.k_invariant = true;
    return g;
}

}  // namespace tracekit
